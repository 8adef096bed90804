import json

import pytest

from slnpres.formats import FORMATS, PresentationFormatError, emit, parse
from slnpres.presgen import build_presentation


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("fmt", FORMATS)
@pytest.mark.parametrize("reduce", [False, True])
def test_round_trip_is_byte_identical(n, fmt, reduce):
    pres = build_presentation(n, reduce=reduce)
    data = emit(pres, fmt)
    back = parse(data)
    assert emit(back, fmt) == data
    assert back.relations == pres.relations
    assert back.phi == pres.phi and back.det_relation == pres.det_relation
    # formats agree on content
    other = "text" if fmt == "canonical-json" else "canonical-json"
    assert emit(parse(emit(back, other)), fmt) == data


def test_emit_is_deterministic():
    assert emit(build_presentation(3)) == emit(build_presentation(3))


def test_n2_json_content():
    obj = json.loads(emit(build_presentation(2)))
    assert len(obj["variables"]) == 4
    assert [r["tag"] for r in obj["relations"]] == [{"kind": "sl2", "params": {"d": 1}}]
    # integers are decimal strings
    num, den, _ = obj["relations"][0]["poly"][0]
    assert isinstance(num, str) and isinstance(den, str)


def _mutate(obj_fn):
    obj = json.loads(emit(build_presentation(2)))
    obj_fn(obj)
    return json.dumps(obj)


def test_parse_rejects_undeclared_variable():
    def bad(obj):
        obj["relations"][0]["poly"][0][2][0][0] = 99
    with pytest.raises(PresentationFormatError, match=r"\$\.relations\[0\]\.poly\[0\]\[2\]\[0\]"):
        parse(_mutate(bad))


@pytest.mark.parametrize("mutation,where", [
    (lambda o: o.pop("det_relation"), "missing field"),
    (lambda o: o.__setitem__("n", 1), r"\$\.n"),
    (lambda o: o["variables"].append(o["variables"][0]), "duplicate"),
    (lambda o: o["relations"][0].__setitem__("tag", {"kind": "weird"}), r"\$\.relations\[0\]\.tag"),
    (lambda o: o["relations"][0]["poly"][0].__setitem__(1, "0"), "bad coefficient"),
    (lambda o: o["phi"].__setitem__("17", []), "undeclared"),
])
def test_parse_reports_location(mutation, where):
    with pytest.raises(PresentationFormatError, match=where):
        parse(_mutate(mutation))


def test_parse_text_errors():
    text = emit(build_presentation(2), "text").decode()
    with pytest.raises(PresentationFormatError, match="line 6"):
        parse(text.replace("x-_1*x+_2", "x-_9*x+_2"))
    with pytest.raises(PresentationFormatError, match="missing det"):
        parse("\n".join(line for line in text.splitlines() if not line.startswith("det")))
    with pytest.raises(PresentationFormatError, match="line 1"):
        parse("hello")
    with pytest.raises(PresentationFormatError):
        parse("{not json")


def test_unknown_format():
    with pytest.raises(ValueError):
        emit(build_presentation(2), "xml")

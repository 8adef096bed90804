import sys

from slnpres.cli import main

sys.exit(main())

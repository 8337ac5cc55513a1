import sys

from omconf.cli import main

sys.exit(main())

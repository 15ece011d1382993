import sys

from orbitres.cli import main

sys.exit(main())

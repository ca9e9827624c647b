import sys

from remez_lab.cli import main

sys.exit(main())

import sys

from qsuperhaar.cli import main

sys.exit(main())

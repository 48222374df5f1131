import sys

from netrisk.cli import main

sys.exit(main())

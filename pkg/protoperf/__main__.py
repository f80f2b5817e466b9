import sys

from protoperf.cli import main

sys.exit(main())

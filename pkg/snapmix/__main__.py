import sys

from snapmix.harness.cli import main

sys.exit(main())

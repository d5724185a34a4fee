import sys

from fidmono.cli import main

sys.exit(main())

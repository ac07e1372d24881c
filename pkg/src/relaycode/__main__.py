import sys

from relaycode.cli import main

sys.exit(main())

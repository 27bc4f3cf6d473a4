import sys

from treelat.cli import main

sys.exit(main())

import sys

from linescan_api.run_cli import main

sys.exit(main())

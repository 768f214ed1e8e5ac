import sys

from ontoline.cli import main

sys.exit(main())

import sys

from tinsep.cli import main

sys.exit(main())

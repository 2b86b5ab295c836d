import sys

from .clireport import main

sys.exit(main())

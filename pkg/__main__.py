import sys

from .cli.handler import main


sys.exit(main())

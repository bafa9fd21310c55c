from sys import exit

from .cli.main import main

exit(main())

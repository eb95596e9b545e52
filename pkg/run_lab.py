import sys

from uq2lab.api.cli import main
from uq2lab.config.logging_config import setup_logging

# 设置日志
setup_logging()

if __name__ == '__main__':
    sys.exit(main())

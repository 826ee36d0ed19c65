import logging
import sys

from modules.cli import run

logger = logging.getLogger()
logging.basicConfig(level=logging.INFO)


def main():
    logger.info('Main starting')
    return run(sys.argv[1:])


if __name__ == '__main__':
    sys.exit(main())

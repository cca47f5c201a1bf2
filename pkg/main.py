import sys

from dotenv import load_dotenv
load_dotenv()  # Load environment variables from .env

from toricdeform import run  # noqa: E402

if __name__ == '__main__':
    sys.exit(run())

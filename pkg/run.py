from dotenv import load_dotenv

# Load environment variables
load_dotenv()

from app.cli import main  # noqa: E402

if __name__ == '__main__':
    main(prog_name='weno')

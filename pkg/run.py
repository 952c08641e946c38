from flask.cli import FlaskGroup

from app import create_app

cli = FlaskGroup(create_app=create_app, add_default_commands=False, add_version_option=False,
                 load_dotenv=False, help='Exact computations on standard Young tableaux.')

if __name__ == '__main__':
    cli()

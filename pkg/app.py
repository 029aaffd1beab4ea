import os
from flask import Flask
from werkzeug.middleware.proxy_fix import ProxyFix
from dotenv import load_dotenv
from handlers import api as api_handlers
from handlers import metrics as metrics_handlers
from utils.config import get_settings
from utils.db import init_db
from utils.logger import configure_logging


def create_app() -> Flask:
    # Load environment variables from .env early
    load_dotenv()
    app = Flask(__name__)
    app.secret_key = os.environ.get("FLASK_SECRET_KEY", "dev-secret")
    # Ensure correct scheme/host behind a reverse proxy
    app.wsgi_app = ProxyFix(app.wsgi_app, x_for=1, x_proto=1, x_host=1)
    configure_logging(get_settings().log_level or "INFO")
    init_db()
    app.register_blueprint(api_handlers.bp)
    app.register_blueprint(metrics_handlers.bp)

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    return app


if __name__ == "__main__":
    create_app().run(host="0.0.0.0", port=int(os.environ.get("PORT", "5050")))

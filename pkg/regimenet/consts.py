from os import environ
from pathlib import Path

TOP_LEVEL = Path(__file__).resolve().parent.parent

_CONF_DIR = TOP_LEVEL / "config"

CONFIG_YML = _CONF_DIR / "defaults.yml"
TABLE1_YML = _CONF_DIR / "table1.yml"

UTF8 = "UTF-8"

DATE_COLUMN = "date"

MODEL_FORMAT = "regimenet-model/1"
SCALER_FORMAT = "regimenet-scaler/1"


DEBUG = "REGIMENET_DEBUG" in environ
LOG_LEVEL = environ.get("REGIMENET_LOG_LEVEL", "INFO").upper()

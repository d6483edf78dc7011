import os
from dotenv import load_dotenv

load_dotenv()

_DEFAULT_CACHE_ROOT = os.getenv("XDG_CACHE_HOME", os.path.join(os.path.expanduser("~"), ".cache"))

CACHE_DIR = os.getenv("GCTLAB_CACHE_DIR", os.path.join(_DEFAULT_CACHE_ROOT, "gctlab"))
MAX_N = int(os.getenv("GCTLAB_MAX_N", 20))
MAX_ORACLE_N = int(os.getenv("GCTLAB_MAX_ORACLE_N", 40))
PLETHYSM_CEILING = int(os.getenv("GCTLAB_PLETHYSM_CEILING", 18))
THREADS = int(os.getenv("GCTLAB_THREADS", 1))
CERTIFICATE_RETRIES = int(os.getenv("GCTLAB_CERTIFICATE_RETRIES", 4))
VERBOSE = os.getenv("GCTLAB_VERBOSE", "1").lower() not in ("0", "false", "no")

SCHEMA_VERSION = "gctlab/1"
CACHE_FORMAT = "gctlab-cache/1"

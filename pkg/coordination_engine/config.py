import os
import json
import copy
import logging
from pathlib import Path

logger = logging.getLogger(__name__)

CONFIG_FILE_NAME = "engine_config.json"
SETTINGS_SECTION = "_engine_settings"


class EngineConfig:
    """Configuration for the coordination engine and its command-line tools.

    The JSON file holds an ``_engine_settings`` section with the defaults used
    by every command and a ``servers`` section naming coordination servers for
    the HTTP client.
    """

    DEFAULT_ENGINE_SETTINGS = {
        "domain": [0, 1],
        "bound": 1000,
        "rounds": 10,
        "seed": 0,
        "policy": "lex",
        "depth": 4,
        "log_level": "ERROR",
        "log_file": None
    }

    DEFAULT_SERVERS = {
        "default": {
            "base_url": "http://127.0.0.1:5000",
            "timeout": 80
        }
    }

    def __init__(self, config_file=None):
        """Load configuration from ``config_file`` or the default location."""
        self.config_file = config_file or self._get_default_config_path()
        self.data = {}
        self._load_config()

        # Settings missing from the file fall back to defaults
        self.engine_settings = copy.deepcopy(self.DEFAULT_ENGINE_SETTINGS)
        self.engine_settings.update(self.data.get(SETTINGS_SECTION, {}))
        self.servers = copy.deepcopy(self.DEFAULT_SERVERS)
        self.servers.update(self.data.get("servers", {}))

    @staticmethod
    def _get_default_config_path():
        """Get the default configuration file path."""
        config_dir = os.environ.get("COORDINATION_CONFIG_DIR")
        if config_dir:
            path = Path(config_dir) / CONFIG_FILE_NAME
        elif os.name == "nt":  # Windows
            path = Path(os.environ.get("APPDATA", "")) / "CoordinationEngine" / CONFIG_FILE_NAME
        else:
            path = Path.home() / ".config" / "coordination_engine" / CONFIG_FILE_NAME
        return str(path)

    @property
    def config_dir(self):
        return os.path.dirname(os.path.abspath(self.config_file))

    def _load_config(self):
        """Load configuration from file or create it with defaults."""
        try:
            if os.path.exists(self.config_file):
                with open(self.config_file, 'r') as f:
                    self.data = json.load(f)
            else:
                self.data = {
                    SETTINGS_SECTION: copy.deepcopy(self.DEFAULT_ENGINE_SETTINGS),
                    "servers": copy.deepcopy(self.DEFAULT_SERVERS)
                }
                os.makedirs(self.config_dir, exist_ok=True)
                self.save()
        except (OSError, ValueError) as e:
            logger.warning(f"Could not load config {self.config_file}, using defaults: {e}")
            self.data = {}

    def save(self):
        """Save configuration to file. Returns False when the file cannot be written."""
        self.data[SETTINGS_SECTION] = getattr(self, "engine_settings", self.data.get(SETTINGS_SECTION, {}))
        self.data["servers"] = getattr(self, "servers", self.data.get("servers", {}))
        try:
            with open(self.config_file, 'w') as f:
                json.dump(self.data, f, indent=2)
            return True
        except OSError as e:
            logger.warning(f"Error saving config {self.config_file}: {e}")
            return False

    def get_engine_settings(self):
        """Get all engine settings."""
        return self.engine_settings.copy()

    def get_setting(self, key, default=None):
        """Get a specific engine setting."""
        return self.engine_settings.get(key, default)

    def set_setting(self, key, value):
        """Set a specific engine setting and save."""
        self.engine_settings[key] = value
        return self.save()

    def get_server_config(self, server_id="default"):
        """Connection settings of a named server."""
        return self.servers.get(server_id, self.DEFAULT_SERVERS["default"])

    def set_server_config(self, server_id, config):
        self.servers[server_id] = config
        return self.save()

    def get_all_servers(self):
        return list(self.servers.keys())

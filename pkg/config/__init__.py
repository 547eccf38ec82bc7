from .settings import DEFAULTS, Config, get_setting, load_config
from .suites import SUITES, get_suites_by_category, get_suite_names

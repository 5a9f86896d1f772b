from .config import CheckSpec, RunConfig, load_config, parse_config
from .registry import CHECKS, GROUPS, PARAMS, CheckContext, checks_for
from .serialize import element_from_json, element_to_json, instance_from_json
from .suite import SCHEMA_VERSION, RunReport, run_check, run_suite, select_checks

__all__ = (
    'CheckSpec',
    'RunConfig',
    'load_config',
    'parse_config',

    'CHECKS',
    'GROUPS',
    'PARAMS',
    'CheckContext',
    'checks_for',

    'element_from_json',
    'element_to_json',
    'instance_from_json',

    'SCHEMA_VERSION',
    'RunReport',
    'run_check',
    'run_suite',
    'select_checks',
)

import logging
import math

from config import config


def setup_logging(level=None):
    """Setup logging configuration"""
    logging.basicConfig(
        level=level or config.LOG_LEVEL,
        format=config.LOG_FORMAT
    )


def format_weight(value):
    """Render an extended weight, using the configured token for infinity"""
    if value == math.inf:
        return config.INFINITY_TOKEN
    return str(int(value))


def parse_weight(token):
    """Inverse of format_weight"""
    if isinstance(token, str) and token.strip() == config.INFINITY_TOKEN:
        return math.inf
    if isinstance(token, float) and math.isinf(token):
        return math.inf
    return int(token)


def vertex_label(name, memory_state):
    """Label of a product vertex, e.g. (v0,q1)"""
    return f"({name},{memory_state})"

"""
gbmlab Renderer Module

This module owns the Jinja2 environment used for every text artifact the lab
writes: the graph dump and the human-readable CLI reports.
"""

import logging
import os
from typing import Any

from jinja2 import Environment, PackageLoader, StrictUndefined

# Configure logging
logger = logging.getLogger(__name__)

environment = Environment(
    loader=PackageLoader('gbmlab', 'templates'),
    undefined=StrictUndefined,
    keep_trailing_newline=True,
    trim_blocks=True,
    lstrip_blocks=True,
    autoescape=False,
)


def fmt_float(value: Any) -> str:
    """Round-trip exact rendering (17 significant digits)."""
    return format(float(value), '.17g')


def fmt_short(value: Any) -> str:
    return format(float(value), '.6g')


environment.filters['exact'] = fmt_float
environment.filters['short'] = fmt_short


def render(template_name: str, **context) -> str:
    """
    Render a template to a string.

    Args:
        template_name (str): File name under gbmlab/templates
        **context: Template variables

    Returns:
        str: Rendered text
    """
    return environment.get_template(template_name).render(**context)


def render_to_file(template_name: str, path: str, **context) -> None:
    """Stream a template straight to a file."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    logger.debug(f"Rendering {template_name} to {path}")
    environment.get_template(template_name).stream(**context).dump(path, encoding='utf-8')

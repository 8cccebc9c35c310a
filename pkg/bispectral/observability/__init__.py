# bispectral/observability/__init__.py
from bispectral.observability.logging import JsonFormatter, configure_logging
from bispectral.observability.metrics import MetricsRegistry, metrics

__all__ = ["JsonFormatter", "configure_logging", "MetricsRegistry", "metrics"]

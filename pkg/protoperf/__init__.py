"""
Performance estimation of security protocols from cryptographic cost models.

-  Cost models:

   -  Cubic least-squares fits of the cost of each algorithm category
      (symmetric encrypt/decrypt, hash, asymmetric encrypt/decrypt)
   -  JSON model registries and a bundled reference registry

-  Benchmarking:

   -  Warm-up, batching and repetition harness over payload-size sweeps
   -  Synthetic, cryptography and pycryptodome backends

-  Protocols:

   -  A small text notation for message-passing protocols
   -  Estimated and measured protocol costs and pairwise verdicts
   -  Seeded generation of random protocol corpora

-  Validation of estimated against measured protocol orderings
"""
import os
from typing import List, Optional, Union

from .bench import SweepConfig, get_backend, sweep
from .estimator import compare_protocols, estimate_protocol, measure_protocol
from .generator import GenConfig, generate_corpus
from .model import ModelRegistry, PolynomialModel, eval_model, fit_cubic, fit_error
from .protocol import parse_protocol, read_corpus, serialize_protocol, write_corpus
from .validation import run_validation, size_sweep_error

WARN_ON_PRECISION = os.environ.get("PROTOPERF_WARN_ON_PRECISION", True)
WARN_ON_PRECISION = False if WARN_ON_PRECISION in ("0", "False") else True
DEFAULT_SEED = os.environ.get("PROTOPERF_SEED", "0")

__all__ = [
    "GenConfig",
    "ModelRegistry",
    "PolynomialModel",
    "SweepConfig",
    "compare_protocols",
    "estimate_protocol",
    "eval_model",
    "fit_cubic",
    "fit_error",
    "generate_corpus",
    "get_backend",
    "measure_protocol",
    "parse_protocol",
    "read_corpus",
    "run_validation",
    "serialize_protocol",
    "size_sweep_error",
    "sweep",
    "write_corpus",
    "WARN_ON_PRECISION",
    "DEFAULT_SEED",
]


def test(
    extra_args: Optional[Union[str, List[str]]] = None,
    exit: bool = True,
    append: bool = True,
    location: str = "",
) -> int:
    import sys

    try:
        import pytest
    except ImportError:
        raise ImportError("Need pytest to run tests")

    cmd = ["--tb=auto"]
    if extra_args:
        if not isinstance(extra_args, list):
            pytest_args = [extra_args]
        else:
            pytest_args = extra_args
        if append:
            cmd += pytest_args[:]
        else:
            cmd = pytest_args
    pkg = os.path.dirname(__file__)
    if location:
        pkg = os.path.abspath(os.path.join(pkg, location))
    if not os.path.exists(pkg):
        raise RuntimeError(f"{pkg} was not found. Unable to run tests")
    cmd = [pkg] + cmd
    print("running: pytest {}".format(" ".join(cmd)))
    status = pytest.main(cmd)
    if exit:
        sys.exit(status)
    return status


__version__ = "1.0.0"

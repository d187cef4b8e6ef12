"""Exact Puiseux-series arithmetic and non-negativity certificates.

Thin wrapper over the C++ core. Commands mirror the ``rcvf`` executable and
return its JSON output as Python objects.
"""

import json

from ._rcvf import RcvfError, canonical, kind, sos_decompose, verify_certificate
from ._rcvf import run as _run

__all__ = [
    "RcvfError",
    "canonical",
    "kind",
    "sos_decompose",
    "verify_certificate",
    "run",
    "command",
    "evaluate",
    "valuation",
    "gauss",
    "integral",
    "falsify",
    "generate",
    "probe41",
    "find_certificate",
]


def run(*args):
    """Runs the command line and returns (exit_code, stdout, stderr)."""
    return _run([str(a) for a in args])


def command(*args):
    """Runs the command line and returns (exit_code, parsed JSON or None)."""
    code, out, _ = run(*args)
    return code, (json.loads(out) if out.strip() else None)


def _set_args(set_spec):
    return [] if set_spec is None else ["--set", set_spec]


def evaluate(expr, at=None, trunc=None):
    args = ["eval", "--expr", expr]
    for name, value in (at or {}).items():
        args += ["--at", f"{name}={value}"]
    if trunc is not None:
        args += ["--trunc", str(trunc)]
    return command(*args)[1]


def valuation(expr):
    return command("val", "--expr", expr)[1]


def gauss(expr, set_spec=None):
    return command("gauss", "--expr", expr, *_set_args(set_spec))[1]


def integral(h, seed, set_spec=None, samples=None):
    extra = [] if samples is None else ["--samples", samples]
    return command("integral", "--h", h, "--seed", seed, *_set_args(set_spec), *extra)


def _psd(mode, p, seed, set_spec, samples):
    extra = [] if samples is None else ["--samples", samples]
    return command("psd", "--p", p, mode, "--seed", seed, *_set_args(set_spec), *extra)


def falsify(p, seed, set_spec=None, samples=None):
    return _psd("--falsify", p, seed, set_spec, samples)


def generate(p, seed, set_spec=None, samples=None):
    return _psd("--generate", p, seed, set_spec, samples)


def probe41(p, seed, set_spec=None, samples=None):
    return _psd("--probe41", p, seed, set_spec, samples)


def find_certificate(p, seed, set_spec=None):
    """Certificate document (dict) or None when no certificate was found."""
    code, doc = command("cert", "find", "--p", p, "--seed", seed, *_set_args(set_spec))
    return doc if code == 0 else None

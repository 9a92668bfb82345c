import json

try:
    from . import _s2xs2 as _core
except ImportError:
    import _s2xs2 as _core


def analyze(surface, nt=64, ns=64, tol_scale=1.0):
    """Analyzer report for one catalog surface, as a dict."""
    return json.loads(_core.analyze_json(surface, nt, ns, tol_scale))


def spectrum(surface, nt=64, ns=64):
    """Laplace spectrum and index report, as a dict."""
    return json.loads(_core.spectrum_json(surface, nt, ns))


def verify(suites=(), tol_scale=1.0, nt=64, ns=64, surface=""):
    """Run verification suites; returns the report dict."""
    return json.loads(_core.verify_json(list(suites), tol_scale, nt, ns, surface))

from pytest import fail


def assert_close(actual, expected, rel=0.0, abs_=0.0, what=""):
    """Fail with both values printed when |actual - expected| > max(abs_, rel * |expected|)."""
    tol = max(abs_, rel * abs(expected))
    if not abs(actual - expected) <= tol:
        diff = abs(actual - expected)
        fail(f"{what or 'value'}: got {actual!r}, expected {expected!r} (diff {diff:.3e} > {tol:.3e})")

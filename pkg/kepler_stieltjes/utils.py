import time
from itertools import product
from typing import Any

from jinja2 import BaseLoader, Environment

#
# String utils
#


def render_jinja(template: str, **kwargs):
    env = Environment(loader=BaseLoader(), trim_blocks=True, lstrip_blocks=True)
    t = env.from_string(template)
    return t.render(**kwargs)


def parse_list(text: str | None, cast=float) -> list:
    """Parse a comma separated CLI value ("1,10,20") into a list."""
    if text is None or not text.strip():
        return []
    return [cast(x) for x in text.split(",") if x.strip()]


def format_complex(z: complex, digits: int = 6) -> str:
    sign = "-" if z.imag < 0 else "+"
    return f"{z.real:.{digits}f} {sign} {abs(z.imag):.{digits}f} i"


def format_complex_scaled(z: complex, digits: int = 2) -> str:
    """Print a large complex number the way (4.4 - 10. i) x 10^8 reads."""
    scale = max(abs(z.real), abs(z.imag))
    if scale == 0.0:
        return "0"
    exponent = int(f"{scale:e}".split("e")[1])
    if exponent < 2:
        return format_complex(z, digits=digits)
    m = z / 10**exponent
    sign = "-" if m.imag < 0 else "+"
    return f"({m.real:.{digits}g} {sign} {abs(m.imag):.{digits}g} i) x 10^{exponent}"


#
# Time utils
#


class Timer:
    """Usage

    with Timer() as timer:
        some_function()

    print(f"The function took {timer.execution_time} seconds to execute.")
    """

    def __enter__(self):
        self.start_time = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.end_time = time.perf_counter()
        self.execution_time = self.end_time - self.start_time


#
# Misc
#


def build_param_grid(common_params: dict[str, Any], grid_params: dict[str, list[Any]]) -> list[dict[str, Any]]:
    """
    # Example usage:
    common_params = {"eps": 1.0}
    grid_params = {
        "M": [0.5, 1.0],
        "method": ["integral", "oracle"],
    }

    result = build_param_grid(common_params, grid_params)

    # The first key varies slowest:
    # [{"eps": 1.0, "M": 0.5, "method": "integral"},
    #  {"eps": 1.0, "M": 0.5, "method": "oracle"},
    #  {"eps": 1.0, "M": 1.0, "method": "integral"}, ...]
    """
    keys = list(grid_params.keys())
    return [{**common_params, **dict(zip(keys, combo))} for combo in product(*grid_params.values())]

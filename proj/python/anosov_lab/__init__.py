import json

from ._core import (
    InputError,
    __version__,
    census,
    fh_bound,
    fixed_point_count,
    gl2_conjugate,
    is_reversible,
    orbits,
    report,
    rl_word,
    sl2_conjugate,
    surgery_h1,
    suspension_h1,
    theorem_a_prime,
)


def report_json(command, matrix, **kwargs):
    return json.loads(report(command, matrix, **kwargs))

import enum
import os
from typing import Callable, Union

import numpy as np
import numpy.typing as npt


__all__ = (
    "ExitCode",
    "FloatArray",
    "Integrand",
    "PathType",
    "Verdict",
)


FloatArray = npt.NDArray[np.float64]
Integrand = Callable[[FloatArray], FloatArray]
PathType = Union[str, "os.PathLike[str]"]


@enum.unique
class Verdict(str, enum.Enum):
    """
    Outcome of a convergence heuristic.
    """

    converges = "converges"
    diverges = "diverges"
    inconclusive = "inconclusive"


@enum.unique
class ExitCode(enum.IntEnum):
    """
    Process exit statuses of the command line front end.
    """

    ok = 0
    input_error = 1
    check_failed = 2

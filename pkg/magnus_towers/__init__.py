from .utils import *
from .series_core import *
from .magnus import *
from .monomial_combinatorics import *
from .poincare import *
from .arithmetic_linking import *
from .schemas import *
from .pipeline import *

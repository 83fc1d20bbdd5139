from . import cliques
from . import graph
from . import parsing
from . import spectral

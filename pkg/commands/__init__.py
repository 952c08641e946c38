from .counting import counting_bp
from .sampling import sampling_bp
from .distributions import distributions_bp
from .symbolic import symbolic_bp

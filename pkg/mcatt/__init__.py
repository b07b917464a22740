from .TT_constants import TheoryId, CohKind, EXTENSIONS
from .TT_translate import Direction
from .MCATT_main import (Outcome, load_source, check_main, translate_main, adjunction_main, enum_ps_main,
                         selftest_main, write_rows)
from .utils import die

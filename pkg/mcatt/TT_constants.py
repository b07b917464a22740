from enum import Enum


class TheoryId(Enum):
    GLOB      = 'glob'
    CATT      = 'catt'
    GLOB_UNIT = 'glob_unit'
    MCATT     = 'mcatt'

    def __str__(self):
        return self.value


class CohKind(Enum):
    OP = 'op'   # cohop / mop
    EQ = 'eq'   # coh / mcoh

    def __str__(self):
        return self.value


# Theories with the unit type and the eta rule, theories with coherence constructors
UNIT_THEORIES = (TheoryId.GLOB_UNIT, TheoryId.MCATT)
COH_THEORIES  = (TheoryId.CATT, TheoryId.MCATT)

# The fresh base variable of the reduced suspension. Not a NAME token, so no source file can bind it
RESERVED_NAME = '♦'

# File extension -> theory
EXTENSIONS = {
    '.catt':  TheoryId.CATT,
    '.mcatt': TheoryId.MCATT,
}

# Version of the --json report schema
SCHEMA_VERSION = 1

# Rule names used in error reports
RULES = {
    'ec', 'ce', 'var', 'Obj-intro', 'Unit-intro', '()-intro', 'Hom-intro', 'conv',
    'es', 'se', 'pss', 'pse', 'psd', 'ps', 'op', 'eq',
    'cohop-intro', 'coh-intro', 'mop-intro', 'mcoh-intro',
    'rsusp', 'parse', 'elab',
}

# Term constructor keyword for (theory, kind), and the matching introduction rule
CONSTRUCTORS = {
    (TheoryId.CATT,  CohKind.OP): ('cohop', 'cohop-intro'),
    (TheoryId.CATT,  CohKind.EQ): ('coh',   'coh-intro'),
    (TheoryId.MCATT, CohKind.OP): ('mop',   'mop-intro'),
    (TheoryId.MCATT, CohKind.EQ): ('mcoh',  'mcoh-intro'),
}

# Default sizes of the selftest universe
SELFTEST_MAX_VARS = 5
SELFTEST_SAMPLES  = 200
SELFTEST_FUEL     = 64
SELFTEST_DEPTH    = 2

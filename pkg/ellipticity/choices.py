CERTIFICATE_PRYWES_BOUND = "PrywesBound"
CERTIFICATE_H1_ANNIHILATOR = "H1Annihilator"
CERTIFICATE_DUAL_PAIR = "DualPair"
CERTIFICATE_SUBMANIFOLD_BOUND = "SubmanifoldBound"


CERTIFICATE_KINDS = (
    (CERTIFICATE_PRYWES_BOUND, 'Binomial bound on the dimension of a cohomology group'),
    (CERTIFICATE_H1_ANNIHILATOR, 'Degree-one classes annihilating a factor of the form class'),
    (CERTIFICATE_DUAL_PAIR, 'Dual system of classes multiplying to a factor of the form class'),
    (CERTIFICATE_SUBMANIFOLD_BOUND, 'Binomial bound on the image of a submanifold restriction'),
)

RELATION_GREATER = ">"
RELATION_GREATER_EQUAL = ">="

VERDICT_WITNESS = "WITNESS"
VERDICT_OBSTRUCTED = "OBSTRUCTED"
VERDICT_UNKNOWN = "UNKNOWN"

VERDICT_EXIT_CODES = {
    VERDICT_WITNESS: 0,
    VERDICT_OBSTRUCTED: 1,
    VERDICT_UNKNOWN: 2,
}
EXIT_CODE_ERROR = 3

FILE_KIND_VERDICT = "verdict"
FILE_KIND_CERTIFICATE = "certificate"
FILE_KIND_WITNESS = "witness"
FILE_KIND_SUBMANIFOLD_REPORT = "submanifold_report"

WITNESS_SOURCE_TEMPLATE = "template"
WITNESS_SOURCE_ENUMERATION = "enumeration"
WITNESS_SOURCE_FILE = "file"

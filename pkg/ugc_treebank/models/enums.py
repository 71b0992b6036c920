"""Enumeration types for the UGC treebank toolchain."""
from enum import Enum, IntEnum


class Severity(str, Enum):
    """Diagnostic severities, most severe first."""
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"


class TokenClass(str, Enum):
    """Surface classes of UGC meta-tokens."""
    HASHTAG = "hashtag"
    MENTION = "mention"
    URL = "url"
    EMOTICON = "emoticon"
    RT = "rt"
    MARKUP = "markup"
    PLAIN = "plain"


class Confidence(str, Enum):
    """How sure a normalization candidate is."""
    CERTAIN = "certain"  # lexicon hit
    HEURISTIC = "heuristic"  # pattern only


class StructureKind(str, Enum):
    """Kinds of tree well-formedness failures."""
    NO_ROOT = "NoRoot"
    MULTI_ROOT = "MultiRoot"
    CYCLE = "Cycle"
    DISCONNECTED = "Disconnected"
    ROOT_LABEL = "RootLabel"  # head=0 without deprel root or vice versa


class Framework(str, Enum):
    """Dependency annotation frameworks."""
    UD = "UD"
    SUD = "SUD"


class FusionCase(str, Enum):
    """How two fused words relate in the uncontracted tree."""
    GOV = "Gov"  # one governs the other
    SHARED_DEPENDENTS = "SharedDependents"  # co-dependents of one head
    HEAD_AND_GRANDCHILD = "HeadAndGrandchild"  # head fuses with its grandchild
    UNRELATED = "Unrelated"


class OutputFormat(str, Enum):
    """Report formats of the command line."""
    HUMAN = "human"
    TSV = "tsv"


class FixMode(str, Enum):
    """Where fixed files go."""
    IN_PLACE = "in-place"
    OUTPUT_DIR = "output-dir"
    DRY_RUN = "dry-run"


class SegmentDirection(str, Enum):
    """Sentence-unit segmentation directions."""
    SPLIT = "split"
    MERGE_BY_POST_ID = "merge-by-post-id"


class ConvertDirection(str, Enum):
    """UD/SUD conversion directions."""
    UD2SUD = "ud2sud"
    SUD2UD = "sud2ud"


class ExitCode(IntEnum):
    """Process exit codes of the command line."""
    OK = 0
    ERRORS = 1
    PARSE_FAILURE = 2
    CONFIG_ERROR = 3
    INTERRUPTED = 130


SEVERITY_RANK: dict[Severity, int] = {
    Severity.ERROR: 0,
    Severity.WARNING: 1,
    Severity.INFO: 2,
}

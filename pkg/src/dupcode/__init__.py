"""Codes for reverse-complement and palindromic duplication channels."""
from .alphabet import ComplementMap, Word, format_word, parse_word, rep, rep_inv, reverse_complement
from .dup_channel import DuplicationEvent, apply, apply_disjoint, ball, sample
from .dup_codes import CodeLayout, c_decode, c_encode
from .errors import (
    AmbiguousDecode,
    BudgetExceeded,
    CorruptField,
    CorruptIndex,
    DecodeFail,
    DupCodeError,
    IllegalInput,
    NoMatch,
    PreconditionError,
    TooManyErrors,
)
from .rcd_root import RootParams, decode_disjoint, decode_single, is_root
from .rll_codec import RllParams, rll_decode, rll_encode
from .root_codec import RootCodec

__version__ = "0.1.0"

"""Exact-arithmetic ranked-ballot proportional tabulation.

Top-down and bottom-up Phragmén lists, quota-based Phragmén, instant
runoff, and a brute-force Droop proportionality oracle.
"""

from .ballots import (
    Ballot,
    BallotProfile,
    Candidate,
    ParseError,
    ProfileError,
    load_example,
    make_profile,
    merge_profiles,
    parse_profile,
    read_profile,
    restrict_profile,
    serialize_profile,
)
from .engine import AuditLog, CandidateStatus, CountState, droop_quota, priority
from .methods import (
    ElectionResult,
    ProportionalList,
    bottom_up_list,
    irv,
    quota_phragmen,
    top_down_list,
    top_down_round,
)
from .oracle import all_constraints, check_droop, droop_compliant_sets, solid_coalition_support

__version__ = "0.1.0"

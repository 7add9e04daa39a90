"""Exact invariants, constructions and exhaustive search for intersecting
r-partite linear systems (Ryser-type bounds)."""

__version__ = "0.1.0"

from .system import (DegreeProfile, InvalidSystemError, LinearSystem, SidePartition,
                     ValidationReport, degree_profile, find_partition, is_intersecting,
                     validate)
from .canon import canonical_form
from .fields import FieldTables, make_field
from .constructions import (PlaneHandle, projective_plane, random_linear_system, triangle,
                            truncate)
from .invariants import (InvariantCertificate, nu2_exact, nu_exact, tau_exact,
                         theorem2_predicate)
from .oracles import nu2_oracle, nu_oracle, tau_oracle
from .cliquerep import (CliquePartition, enumerate_partitions, from_clique_partition, nu2_rep,
                        tau_rep, to_clique_partition)
from .audit import AuditReport, FlResult, audit_lemma, search_fl, verify_theorem1
from .kernels import BACKEND

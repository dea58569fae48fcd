"""Exact connection-blocking computations on Heisenberg nilmanifolds,
flat tori and SL(2) quotients."""

from .exactnum import (FieldElement, FieldSpecError, MixedFieldError,
                       NumberField, RatMatrix, Rational, SpanCertificate,
                       SpanWitness, solve_rational_span)
from .heisenberg import (HeisPoint, LatticeElement, LatticeSpec, ReducedPoint,
                         heis_exp, heis_inv, heis_log, heis_mul, heis_pow,
                         project_xyz, reduce)
from .blockability import (BlockCertificate, BlockVerdict, MidpointReport,
                           PointPair, WindowCapError, decide_pair, decide_self,
                           enumerate_midpoints, normalize_to_basepoint,
                           sqrt_lattice_classes, sqrt_lattice_class_counts)
from .torus import (BlockSetResult, GeodesicIndex, TorusPoint, find_unblocked,
                    product_blockable, segment_hits, torus_block_set,
                    torus_verify)
from .sl2 import (QuadElement, Sl2Matrix, Sl2SqrtResult, SpreadReport,
                  SquarefreeLimitError, coset_spread, enumerate_sl2z, sl2_sqrt,
                  squarefree_part)

__version__ = "0.1.0"

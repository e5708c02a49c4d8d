"""Exact finite-group machinery for packet lifting.

Restriction/induction through Clifford theory, component groups of
self-dual parameters with a matrix-group cross-check, the lifting exact
sequence with its twist map, and coarse/refined packet structure, all in
exact arithmetic.
"""

from .abelian import (AbCharacter, AbHom, FinAbGroup, SubgroupData,
                      annihilator, characters, cosets, dual_group,
                      hom_kernel_image, smith_normal_form,
                      subgroup_elements, subgroup_from_generators)
from .chartable import (CharacterTable, ClassFunction, character_table,
                        induce, inner_product, restrict, trivial_character)
from .clifford import (CliffordContext, CliffordError, CliffordReport,
                       build_context, quotient_linear_characters,
                       verify_clifford_suite)
from .cycl import CycNumber
from .fileformat import (FileFormatError, ParameterFile, ParameterRecord,
                         SyntheticBlock, parse_parameter_file,
                         serialize_parameter_file)
from .lifting import (CoarseCounts, CoarsePacket, LiftingDatum, LiftingError,
                      Obstruction, PairingOutcome, RefinedPacket, TwistGroup,
                      alpha_from_twist_chars, build_coarse_packet,
                      build_lifting, coarse_structure, construct_pairing,
                      exhaustive_pairing_search, multiplicity_bridge,
                      refined_decomposition)
from .oracle import (OracleMismatch, OracleOutcome, OracleUnsupported,
                     commutant_oracle, compare_with_component_data,
                     oracle_comparison)
from .params import (ClassicalParameter, ComponentGroupData, ParameterError,
                     SummandSpec, UnsupportedParameter, complement_element,
                     component_group, endoscopic_split,
                     theta0_equivalence_check)
from .report import Report, analyze_file, render_machine, render_text

__version__ = "0.1.0"

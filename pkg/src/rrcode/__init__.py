"""Read-and-run constrained coding for multi-level flash memory."""

from .capacity import (
    build_A1,
    build_A2,
    capacities,
    characteristic_polynomial,
    level_probabilities,
    min_length_for_rate,
    render_table,
    scheme_metrics,
    spectral_radius,
)
from .cardinality import BINARY, QUATERNARY, CardinalityTable, adder_size, build_table, cardinality
from .codec_binary import BinaryFrameConfig, BinaryRRLocoCodec, codeword_of, index_of, index_of_complemented
from .codec_quaternary import QuaternaryFrameConfig, QuaternaryRRLocoCodec, codeword_of4, index_of4
from .constraints import (
    R2,
    R2_COMPLEMENTED,
    R4,
    ForbiddenSet,
    Variant,
    forbidden_level_triples,
    full_level_set,
    relaxed_level_set,
    scan_grid,
    scan_sequence,
)
from .exceptions import (
    ConfigError,
    ConstraintViolationError,
    FramingError,
    IndexRangeError,
    IntegrityError,
    RRCodeError,
)
from .mapping import GrayMap, build_gray_map, gf4_to_pair, level_to_pages, pages_to_level, pair_to_gf4
from .pipeline import (
    BlockConfig,
    RRBlockCoder,
    capacity_bits,
    indirect_protection_report,
    measure_stats,
    read_block,
    write_block,
)
from .scheme_2d import TwoDimensionalRRCodec, decode_2d, encode_2d

__version__ = "0.1.0"

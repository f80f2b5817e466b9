from protoperf.protocol.model import (
    CryptoOp,
    Protocol,
    ProtocolStep,
    concat,
    is_identifier,
    permute_steps,
)
from protoperf.protocol.parser import (
    parse_protocol,
    read_corpus,
    serialize_protocol,
    write_corpus,
)

__all__ = [
    "CryptoOp",
    "Protocol",
    "ProtocolStep",
    "concat",
    "is_identifier",
    "parse_protocol",
    "permute_steps",
    "read_corpus",
    "serialize_protocol",
    "write_corpus",
]

"""Exception hierarchy shared by the encoder, decoder, composer and I/O layers."""


class DuelQRError(Exception):
    """Base class for all library errors."""


class CapacityExceeded(DuelQRError):
    pass


class InvalidMaskOverride(DuelQRError, ValueError):
    pass


class UnsupportedVersion(DuelQRError, ValueError):
    pass


class ScaleTooSmall(DuelQRError, ValueError):
    pass


class BudgetExceeded(DuelQRError):
    """Generous structural boxes would steal more codewords than RS can repair."""


class GeometryMismatch(DuelQRError, ValueError):
    pass


class DegenerateGeometry(DuelQRError, ValueError):
    pass


class DecodeError(DuelQRError):
    """Base for failures that a scanner would report as 'no read'."""


class FormatUnreadable(DecodeError):
    pass


class TooManyErrors(DecodeError):
    pass


class MalformedPayload(DecodeError):
    pass


class RasterFormatError(DuelQRError, ValueError):
    pass


class MalformedHeader(RasterFormatError):
    pass


class TruncatedBody(RasterFormatError):
    pass

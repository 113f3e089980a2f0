"""
Centralized exception definitions for mixedideals.
"""

class IdealError(Exception):
    """Base error for every library failure."""
    pass

class InvalidAmbient(IdealError):
    """Ambient sizes are negative or both zero."""
    pass

class CapExceeded(IdealError):
    """More variables than the bitmask width supports."""
    pass

class DegreeOutOfRange(IdealError):
    """A Veronese degree lies outside its variable block."""
    pass

class AmbientMismatch(IdealError):
    """Two operands live in different polynomial rings."""
    pass

class UnsupportedIdeal(IdealError):
    """Operation is undefined on the zero or the unit ideal."""
    pass

class SupportOutsideVertices(IdealError):
    """A generator uses a variable outside the requested vertex set."""
    pass

class VerticesOutsideComplex(IdealError):
    """Restriction set is not contained in the complex's vertex set."""
    pass

class VoidComplex(IdealError):
    """Homology requested on the void complex."""
    pass

class InvalidField(IdealError):
    """Field specification is not Q or GF(p) with p prime."""
    pass

class TeraiMismatch(IdealError):
    """reg(I) differs from pd(S/I*); signals an implementation bug."""
    def __init__(self, message: str, reg: int = None, dual_pd: int = None):
        self.reg = reg
        self.dual_pd = dual_pd
        super().__init__(message)

class InvalidJobs(IdealError):
    """Worker count for a sweep is below one."""
    pass

class UnsupportedShape(IdealError):
    """Mixed product spec has no closed-form formula (too many terms, wrong shape)."""
    pass

class EmptyBlock(IdealError):
    """Construction needs both variable blocks to be nonempty."""
    pass

class ConfigError(IdealError):
    """Malformed configuration file."""
    def __init__(self, message: str, source: str = None, line_num: int = None):
        self.source = source
        self.line_num = line_num
        where = source or ''
        if line_num:
            where = f"{where}:{line_num}" if where else f"line {line_num}"
        super().__init__(f"{where}: {message}" if where else message)

class UsageError(IdealError):
    """Bad command-line input; carries the offending flag."""
    def __init__(self, flag: str, message: str):
        self.flag = flag
        super().__init__(f"{flag}: {message}")

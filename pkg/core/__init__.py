# Elliptic Hecke Workbench Core Modules
from .elliptic import CurveParams, CurvePoint, FParams
from .errors import WorkbenchError
from .hecke import HeckeElement
from .jets import Jet
from .klrjet import JetTransport, KLRVector, Quiver
from .params import EigenData, Multisegment, SegmentQuiver
from .report import Check, Report
from .rootweyl import RootDatum, WeylElement
from .sections import SectionExpr

__all__ = [
    'CurveParams', 'CurvePoint', 'FParams', 'WorkbenchError', 'HeckeElement', 'Jet',
    'JetTransport', 'KLRVector', 'Quiver', 'EigenData', 'Multisegment', 'SegmentQuiver',
    'Check', 'Report', 'RootDatum', 'WeylElement', 'SectionExpr',
]

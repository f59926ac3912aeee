"""Elements of odd order in class groups of Q(sqrt(k^2 - p^n))."""

from ._kernels import BACKEND
from .certifier import Certificate, certify, cross_validate
from .diophantine import proposition_pb_verdict, solve_eq1
from .errors import OddClassError
from .field import FieldInstance, build_instance, ideal_above_p, is_qth_power
from .qform import QForm, class_order, compose, enumerate_class_group, identity, pow_class, reduce

__all__ = [
    "BACKEND", "Certificate", "FieldInstance", "OddClassError", "QForm",
    "build_instance", "certify", "class_order", "compose", "cross_validate",
    "enumerate_class_group", "identity", "ideal_above_p", "is_qth_power",
    "pow_class", "proposition_pb_verdict", "reduce", "solve_eq1",
]

__version__ = "0.1.0"

"""Finite categories, the free (symmetric) monoidal monad and coherence checkers."""
from .fincat import FinCat, FinCatError, Functor, discrete, identity_functor, validate_fincat
from .free import (FreeMonMor, check_monad_laws, eta_mor, eta_obj, free_monoidal, mu_mor, mu_obj,
                   t_morphisms, t_objects)
from .presentation import (App, Checker, Coequifier, Coinserter, Comp, Coproduct, Id, Iso, Op,
                           OperadPresentation, PresentationError, Var, builtin_M, builtin_S,
                           compile_presentation, eval_term, parse_term, subst)
from .tensor import (StructureMap, TensorData, Undefined, check_algebra, check_algebra_morphism,
                     check_associator_coherence, check_hexagon, check_symmetric_monoidal,
                     check_symmetry, check_unitors, tensor_algebra)

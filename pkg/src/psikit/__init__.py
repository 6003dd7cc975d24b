"""psikit: fibers, PSI-morphisms and strong PSI-morphisms of finitely presented rings."""

from .rings import (FpAlgebra, IdealSpec, ModulePresentation, PrimeSpec, RingMorphism, base_ring, compose,
                    contract_ideal, ideal, identity, idealization, localize, localize_construction,
                    make_algebra, make_module, make_morphism, polynomial_extension, prime,
                    product_construction, quotient_construction, structure_map, tensor_over)
from .psi import (FiberReport, PsiVerdict, common_ideal_reduce, decide_psi, decide_strong, fiber_ring,
                  is_A_prime, is_epimorphism, mb_maximal_check, psi_at, quadratic_order_psi, spectral_preimage,
                  strong_at)

__version__ = "0.1.0"

from .cone import (ConstructionError, cone_of_chain_map, mapping_cone, mapping_cylinder, Cylinder,
                   colon_generators, linear_quotient_sets, iterated_cone)
from .products import (Coproduct, coproduct, coproduct_factor, coproduct_factor_unique, copower,
                       tensor, ordinary_tensor, tensor_rank_formula, Product, simplex_resolution,
                       product_with_simplex, product_simplex_ranks, product_coprime,
                       factor_through_product)
from .limits import (Morphism, Category, Diagram, quotient_complex, union_of, Colimit, colimit,
                     colimit_factor, colimit_factor_unique, span_diagram, glue_along_subresolution,
                     glue_along_morphism, InverseLimit, inverse_limit_tree, inverse_limit_check,
                     inverse_limit_factor, nerve_under)
from .hocolim import hocolim_cylinders, hocolim_nerve, hocolim, hocolim_compare

"""Extended remainder of Binet's first formula for ln Gamma.

Modules
-------
special    log-gamma, digamma, polygamma, classical remainder theta(x)
kernel     delta_{a,b}(t), its derivatives, g_{x,y}, F_{a,b}, Q(t)
quad       semi-infinite Gauss-Kronrod quadrature and divergence fits
remainder  theta_alpha(x), its derivatives and f_{p,q;alpha}
verify     deterministic property suites with CSV reports
cli        command-line front end
"""

from .kernel import KernelParams, delta, delta_prime, delta_second, q_factor
from .quad import QuadConfig, QuadResult, divergence_scan, integrate_semi_infinite
from .remainder import FpqParams, f_pq, h_pq_kernel, theta_alpha_closed, theta_alpha_deriv, theta_alpha_quad
from .special import DomainError, digamma, log_gamma, polygamma, theta_classic

__version__ = "0.1.0"

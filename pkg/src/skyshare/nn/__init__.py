from .core import (Conv2d, Dense, Layer, LstmCell, Module, Upsample2x,
                   sigmoid)
from .gradcheck import grad_check
from .losses import (bce_logits_mean, bce_logits_sum, cosine_gap,
                     kl_diag_gauss, mse_mean, sq_err_sum)
from .optim import Adam, hard_update, polyak_update
from .ou import OuProcess
from .serialize import (load_arrays, load_module_arrays, module_arrays,
                        save_arrays)

from .si import si_constraint_rank, si_dim_im_generic, si_dim_im_points, si_pg

__all__ = ["si_constraint_rank", "si_dim_im_generic", "si_dim_im_points", "si_pg"]

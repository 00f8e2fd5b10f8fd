"""Centers of meta-nilpotent quotients F/F_3 x| Z and the quadratic forms Q_K, Q_f."""

__version__ = "0.1.0"

"""Application configuration"""
from pydantic_settings import BaseSettings
from typing import Optional


class Settings(BaseSettings):
    """Application settings loaded from environment variables"""
    
    # Application
    APP_NAME: str = "spectra"
    APP_VERSION: str = "1.0.0"
    LOG_LEVEL: str = "INFO"
    
    # Worker pool (enumeration and verification); None means os.cpu_count()
    SPECTRA_THREADS: Optional[int] = None
    
    # Order caps for exponential algorithms
    CANONICAL_ORDER_CAP: int = 8
    CYCLE_EXPANSION_ORDER_CAP: int = 12
    ENUMERATION_ALL_ARCS_MAX_ORDER: int = 5
    ENUMERATION_FIXED_ARCS_MAX_ORDER: int = 7
    
    # Root isolation
    RHO_TOLERANCE_DIGITS: int = 12  # bracket width 10^-12
    COMPARE_REFINEMENT_DIGITS: int = 30  # compare_rho gives up below 10^-30
    
    # Power iteration on A + I
    POWER_ITERATION_TOLERANCE: float = 1e-10
    POWER_ITERATION_MAX_ITER: int = 500000
    RHO_CROSS_CHECK: bool = True
    RHO_CROSS_CHECK_TOLERANCE: float = 1e-6
    
    # CLI output
    DEFAULT_PRECISION: int = 12
    
    # Verification windows
    FAMILY_LEMMA_MAX_ORDER: int = 30
    BRUTE_FORCE_MAX_ORDER: int = 5
    BICYCLIC_BRUTE_FORCE_MAX_ORDER: int = 7
    ONE_ARC_SCAN_MIN_ORDER: int = 5
    ONE_ARC_SCAN_MAX_ORDER: int = 7
    SECOND_MAX_RANKING_MAX_ORDER: int = 10  # full bicyclic ranking up to here, direct comparisons above
    
    # API Configuration
    API_HOST: str = "0.0.0.0"
    API_PORT: int = 8000
    API_PREFIX: str = "/api/v1"
    DEBUG: bool = False
    
    class Config:
        env_file = ".env"
        case_sensitive = True
        extra = "ignore"  # Ignore extra fields from .env


settings = Settings()

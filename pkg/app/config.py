from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # App info
    app_name: str = "Composition Tableau Toolkit"
    app_version: str = "0.1.0"
    log_level: str = "INFO"

    # Composition size cap
    max_n: int = 4096

    # Rank certificate
    rank_prime: int = 2**61 - 1
    rank_trials: int = 3
    rank_seed: int = 20250914  # RANK_SEED overrides
    rank_max_n: int = 7  # sweep skips certificates above this size
    rank_max_cells: int = 4_000_000  # dim p' x dim m bound on the tangent matrix

    # Sweep
    sweep_max_n: int = 14
    sweep_workers: int = 0  # 0 means os.cpu_count()

    # Chain covers collected per pair before the search gives up
    chain_cover_limit: int = 16

    class Config:
        env_file = ".env"
        case_sensitive = False


settings = Settings()

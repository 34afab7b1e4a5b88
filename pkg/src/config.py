from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Logging
    log_level: str = "INFO"
    log_dir: str = "logs"
    log_to_file: bool = False

    # Brute-force oracles
    oracle_vertex_limit: int = 20
    copy_pattern_cap: int = 4
    copy_host_cap: int = 16

    # Subdivision search and pipeline
    search_budget: int = 200_000
    c_balance: float = 1.0

    # Constraint families
    constraint_retry_ceiling: int = 20_000

    # Verification
    verify_block_rows: int = 512

    # Randomness
    seed: int = 0

    class Config:
        env_file = ".env"
        env_prefix = "SEPSYS_"
        case_sensitive = False
        extra = "ignore"  # Ignore extra environment variables


# Global settings instance
settings = Settings()

from abc import ABC
from pydantic_settings import BaseSettings, SettingsConfigDict


class ProjectBaseSettings(BaseSettings, ABC):
    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="",
        env_file_encoding="utf-8",
        extra="ignore",
    )


class TreewidthSettings(ProjectBaseSettings):
    tw_exact_limit: int = 15
    tw_exact_threshold: int = 12
    tw_search_budget: int = 50
    tw_seed: int = 0
    tw_pair_sample_limit: int = 30
    tw_pair_sample_size: int = 100
    tw_max_recursion_calls: int = 10_000


class CspSettings(ProjectBaseSettings):
    csp_base_threshold: int = 2
    csp_search_budget: int = 50


class LoggingSettings(ProjectBaseSettings):
    log_level: str = "WARNING"


class ProjectSettings(TreewidthSettings, CspSettings, LoggingSettings):
    @property
    def treewidth(self) -> TreewidthSettings:
        return TreewidthSettings(**self.model_dump())

    @property
    def csp(self) -> CspSettings:
        return CspSettings(**self.model_dump())

    @property
    def logging(self) -> LoggingSettings:
        return LoggingSettings(**self.model_dump())


settings = ProjectSettings()

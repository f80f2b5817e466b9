from os.path import abspath, join, split

from protoperf.model.registry import ModelRegistry, registry_load


def get_path(f: str) -> str:
    return split(abspath(f))[0]


def load(module: str, file_name: str) -> ModelRegistry:
    return registry_load(join(get_path(module), file_name))

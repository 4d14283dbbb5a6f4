import os


def _int_from_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return max(1, int(raw))
    except ValueError:
        return default


# Worker threads for partitioned enumerations (lattice boxes, candidate sets)
MLDKIT_THREADS = _int_from_env('MLDKIT_THREADS', os.cpu_count() or 1)

MLDKIT_LOG_LEVEL = os.getenv('MLDKIT_LOG_LEVEL', 'WARNING').upper()

# Seed for the randomized verify suites; fixed so reruns are reproducible
MLDKIT_SEED = _int_from_env('MLDKIT_SEED', 20240601)

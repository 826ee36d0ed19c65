import hashlib
import json
import logging
import os
from pathlib import Path

from modules.errors import AlgebraError
from modules.reports import FORMAT_VERSION

logger = logging.getLogger()

CACHE_ENV = 'DSV_CACHE_DIR'
DEFAULT_CACHE_DIR = Path('~/.cache/determinant-singular-vectors')


def cache_dir(override=None):
    """
    ``override``, else ``$DSV_CACHE_DIR``, else the user cache directory.
    """
    if override:
        return Path(override).expanduser()
    return Path(os.environ.get(CACHE_ENV) or DEFAULT_CACHE_DIR).expanduser()


def cache_key(kind, rank, m, n, command):
    return '{}{}-m{}-n{}-{}'.format(kind, rank, m, n, command)


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(',', ':'), ensure_ascii=False)


def digest(payload):
    return hashlib.sha256(canonical_json(payload).encode('utf-8')).hexdigest()


def record_path(directory, key):
    return Path(directory) / '{}.json'.format(key)


def _atomic_write_text(path, text):
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + '.tmp.{}'.format(os.getpid()))
    with tmp.open('w', encoding='utf-8', newline='\n') as f:
        f.write(text)
        f.flush()
        os.fsync(f.fileno())
    os.replace(str(tmp), str(path))


def cache_put(directory, key, payload):
    record = {'version': FORMAT_VERSION, 'key': key, 'payload': payload, 'digest': digest(payload)}
    _atomic_write_text(record_path(directory, key), canonical_json(record) + '\n')


def cache_get(directory, key):
    """
    :return: ``(payload, warning)``; payload is None when the record is missing,
        from another format version or corrupt, and warning is set only for corruption
    """
    path = record_path(directory, key)
    if not path.exists():
        return None, None
    try:
        record = json.loads(path.read_text(encoding='utf-8'))
    except ValueError:
        return None, 'cache record {} is not valid JSON; recomputed'.format(path.name)
    if not isinstance(record, dict) or record.get('version') != FORMAT_VERSION:
        return None, None
    if record.get('key') != key or record.get('digest') != digest(record.get('payload')):
        return None, 'cache record {} failed its digest check; recomputed'.format(path.name)
    return record['payload'], None


class ResultCache(object):
    """
    Versioned JSON records keyed by ``(type, rank, m, n, command)``.

    :param directory: where records live; see ``cache_dir``
    :param bool enabled: a disabled cache never reads or writes
    """

    def __init__(self, directory=None, enabled=True):
        self.directory = cache_dir(directory)
        self.enabled = enabled
        self.warnings = []

    def get(self, key):
        if not self.enabled:
            return None
        payload, warning = cache_get(self.directory, key)
        if warning:
            logger.warning(warning)
            self.warnings.append(warning)
        return payload

    def put(self, key, payload):
        if not self.enabled:
            return
        try:
            cache_put(self.directory, key, payload)
        except (OSError, TypeError, ValueError) as error:
            logger.warning('Could not write cache record {}: {}'.format(key, error))

    def fetch(self, key, compute, encode, decode):
        """
        Cached value for ``key``, computing and storing it on a miss. A record
        that ``decode`` rejects counts as a miss and adds a warning.
        """
        payload = self.get(key)
        if payload is not None:
            try:
                value = decode(payload)
            except (KeyError, IndexError, TypeError, ValueError, AlgebraError) as error:
                warning = 'cache record {} could not be decoded ({!r}); recomputed'.format(key, error)
                logger.warning(warning)
                self.warnings.append(warning)
            else:
                logger.info('Cache hit for {}'.format(key))
                return value
        value = compute()
        self.put(key, encode(value))
        return value

import json

from modules.reports import FORMAT_VERSION
from modules.utils import (CACHE_ENV, ResultCache, cache_dir, cache_get, cache_key, cache_put, canonical_json, digest,
                           record_path)


def test_cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path / 'env'))
    assert cache_dir() == tmp_path / 'env'
    assert cache_dir(str(tmp_path / 'flag')) == tmp_path / 'flag'
    monkeypatch.delenv(CACHE_ENV)
    assert cache_dir().name == 'determinant-singular-vectors'


def test_canonical_json_is_order_free():
    assert canonical_json({'b': 1, 'a': [1, 2]}) == '{"a":[1,2],"b":1}'
    assert digest({'b': 1, 'a': 2}) == digest({'a': 2, 'b': 1})


def test_round_trip(tmp_path):
    key = cache_key('C', 3, 2, 1, 'vector')
    assert key == 'C3-m2-n1-vector'
    cache_put(tmp_path, key, [['X[2e1]', '1/2']])
    assert cache_get(tmp_path, key) == ([['X[2e1]', '1/2']], None)
    assert not list(tmp_path.glob('*.tmp.*'))


def test_missing_record(tmp_path):
    assert cache_get(tmp_path, 'C3-m1-n1-vector') == (None, None)


def test_version_mismatch_is_silent(tmp_path):
    cache_put(tmp_path, 'k', [1])
    path = record_path(tmp_path, 'k')
    record = json.loads(path.read_text())
    record['version'] = -1
    path.write_text(json.dumps(record))
    assert cache_get(tmp_path, 'k') == (None, None)


def test_tampered_record_warns(tmp_path):
    cache_put(tmp_path, 'k', [1, 2])
    path = record_path(tmp_path, 'k')
    record = json.loads(path.read_text())
    record['payload'] = [1, 3]
    path.write_text(json.dumps(record))
    payload, warning = cache_get(tmp_path, 'k')
    assert payload is None
    assert 'digest' in warning


def test_corrupt_record_warns(tmp_path):
    record_path(tmp_path, 'k').write_text('{not json')
    payload, warning = cache_get(tmp_path, 'k')
    assert payload is None
    assert 'JSON' in warning


def test_fetch_computes_once(tmp_path):
    calls = []

    def compute():
        calls.append(1)
        return 42

    cache = ResultCache(tmp_path)
    assert cache.fetch('k', compute, str, int) == 42
    assert cache.fetch('k', compute, str, int) == 42
    assert len(calls) == 1
    assert not cache.warnings


def test_fetch_recovers_from_tampering(tmp_path):
    cache = ResultCache(tmp_path)
    cache.put('k', '1')
    record_path(tmp_path, 'k').write_text('[]')
    assert cache.fetch('k', lambda: 7, str, int) == 7
    assert len(cache.warnings) == 0
    record_path(tmp_path, 'k').write_text(json.dumps({'version': FORMAT_VERSION, 'key': 'k', 'payload': '9', 'digest': '0'}))
    assert cache.fetch('k', lambda: 7, str, int) == 7
    assert len(cache.warnings) == 1


def test_disabled_cache(tmp_path):
    cache = ResultCache(tmp_path, enabled=False)
    cache.put('k', [1])
    assert not record_path(tmp_path, 'k').exists()
    assert cache.get('k') is None


def test_fetch_treats_undecodable_record_as_missing(tmp_path):
    cache = ResultCache(tmp_path)
    cache.put('k', 'not a number')
    assert cache.fetch('k', lambda: 7, str, int) == 7
    assert 'could not be decoded' in cache.warnings[0]
    assert cache.fetch('k', lambda: 8, str, int) == 7
    assert len(cache.warnings) == 1

'''
Deterministic output files and the run manifest.

CSV numbers are written with 17 significant digits, JSON with sorted keys
and the shortest repr that round-trips; both use '\n' line endings, so
identical inputs give byte-identical files.
'''
import csv
import hashlib
import json
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, Optional

import numpy as np

from games.textchoices import GameTypes

from . import __version__

logger = logging.getLogger(__name__)

NUMBER_FORMAT = '.17g'
MANIFEST_NAME = 'manifest.json'


def format_number(value):
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), NUMBER_FORMAT)


def to_jsonable(value):
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, Path):
        return str(value)
    return value


def dumps(data) -> str:
    return json.dumps(to_jsonable(data), sort_keys=True, indent=2) + '\n'


def sha256_file(path) -> str:
    digest = hashlib.sha256()
    with open(path, 'rb') as handle:
        for chunk in iter(lambda: handle.read(1 << 16), b''):
            digest.update(chunk)
    return digest.hexdigest()


def trace_header(config):
    game = config.game
    header = ['n', *game.coordinate_names]
    header += [f'mu_{i}' for i in range(1, config.players + 1)]
    header += [f'dist_lambda_{i}' for i in config.tracked_players]
    header += ['dist_diag', 'dist_vstar']
    if game.game_type == GameTypes.network:
        header += [f'mean_{i}' for i in range(1, config.players + 1)]
    return header + ['profile']


def trace_rows(trace):
    if not len(trace):
        return
    series = trace.series
    profiles = trace.profiles
    for row, n in enumerate(trace.steps):
        values = [n, *trace.states[row], *series.mu[row]]
        values += [series.dist_lambda[i][row] for i in trace.config.tracked_players]
        values += [series.dist_diag[row], series.dist_vstar[row]]
        if series.mean_payoffs is not None:
            values += list(series.mean_payoffs[row])
        yield [format_number(value) for value in values] + [profiles[row]]


def write_trace_csv(trace, path):
    with open(path, 'w', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(trace_header(trace.config))
        writer.writerows(trace_rows(trace))


def write_path_csv(flow, game, path):
    with open(path, 'w', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(['t', *game.coordinate_names])
        for t, state in zip(flow.times, flow.states):
            writer.writerow([format_number(t), *(format_number(value) for value in state)])


def write_json(data, path):
    with open(path, 'w', newline='') as handle:
        handle.write(dumps(data))


@dataclass
class RunManifest:
    command: str
    config: dict
    master_seed: Optional[int] = None
    overrides: dict = field(default_factory=dict)
    outputs: Dict[str, str] = field(default_factory=dict)
    version: str = __version__

    def as_dict(self):
        return {
            'command': self.command,
            'config': self.config,
            'masterSeed': self.master_seed,
            'overrides': self.overrides,
            'outputs': dict(sorted(self.outputs.items())),
            'version': self.version,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            command=data['command'],
            config=data['config'],
            master_seed=data.get('masterSeed'),
            overrides=data.get('overrides', {}),
            outputs=data.get('outputs', {}),
            version=data.get('version', __version__),
        )

    @classmethod
    def read(cls, path):
        path = Path(path)
        if path.is_dir():
            path = path / MANIFEST_NAME
        return cls.from_dict(json.loads(path.read_text()))


class Emitter:
    '''
    Writes outputs under one directory and records their checksums
    '''

    def __init__(self, out_dir, manifest: RunManifest):
        self.out_dir = Path(out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)
        self.manifest = manifest

    def _record(self, path):
        self.manifest.outputs[path.name] = sha256_file(path)
        logger.info('wrote %s', path)
        return path

    def trace(self, trace, name='trace.csv'):
        path = self.out_dir / name
        write_trace_csv(trace, path)
        return self._record(path)

    def ensemble(self, ensemble, summary):
        paths = [self.trace(trace, f'trace_{trace.seed}.csv') for trace in ensemble.traces]
        paths.append(self.json(summary, 'summary.json'))
        return paths

    def flow_path(self, flow, game, name='path.csv'):
        path = self.out_dir / name
        write_path_csv(flow, game, path)
        return self._record(path)

    def json(self, data, name):
        path = self.out_dir / name
        write_json(data, path)
        return self._record(path)

    def finish(self) -> Path:
        path = self.out_dir / MANIFEST_NAME
        write_json(self.manifest.as_dict(), path)
        logger.info('manifest %s lists %d outputs', path, len(self.manifest.outputs))
        return path


def verify_manifest(path):
    '''
    Names of listed outputs whose checksum no longer matches or that are missing
    '''
    path = Path(path)
    directory = path if path.is_dir() else path.parent
    manifest = RunManifest.read(path)
    mismatched = []
    for name, checksum in sorted(manifest.outputs.items()):
        target = directory / name
        if not target.exists() or sha256_file(target) != checksum:
            mismatched.append(name)
    return mismatched


def compare_manifests(first, second):
    '''
    Names whose checksums differ between two runs, or that only one run produced
    '''
    a = RunManifest.read(first).outputs
    b = RunManifest.read(second).outputs
    return sorted(name for name in set(a) | set(b) if a.get(name) != b.get(name))

"""eigenfib report and sample export.

Complex numbers travel as "re+imi" strings built from ``repr`` floats, so
decoding recovers the exact binary value.

:copyright: Copyright 2026 eigenfib developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
import csv
import io
import json
import os
import tempfile

import numpy as np


def encode_complex(z):
    """Encode ``z`` as "re+imi" (or "re-imi")."""
    z = complex(z)
    im = repr(z.imag)
    if not im.startswith('-'):
        im = '+' + im
    return '{}{}i'.format(repr(z.real), im)


def decode_complex(text):
    """Parse "1", "-2i", "1+2i", "i", "1e-3-2.5e+1i" and similar."""
    text = text.strip().replace(' ', '')
    if not text:
        raise ValueError('Cannot parse an empty complex number')
    if not text.endswith('i'):
        return complex(_float(text, text), 0.)

    body = text[:-1]
    # Split at the last sign that is neither leading nor an exponent sign
    split = 0
    for k in range(len(body) - 1, 0, -1):
        if body[k] in '+-' and body[k - 1] not in 'eE':
            split = k
            break

    real = _float(body[:split], text) if split else 0.
    im_part = body[split:]
    if im_part in ('', '+'):
        imag = 1.
    elif im_part == '-':
        imag = -1.
    else:
        imag = _float(im_part, text)
    return complex(real, imag)


def _float(part, text):
    try:
        return float(part)
    except ValueError:
        raise ValueError('Cannot parse complex number {!r}'.format(text))


def encode_vector(vec):
    if vec is None:
        return None
    return [encode_complex(z) for z in vec]


def decode_vector(text):
    """Parse a comma-separated list such as "1+2i,0,3-1i"."""
    if isinstance(text, (list, tuple)):
        return np.array([decode_complex(str(z)) for z in text])
    return np.array([decode_complex(z) for z in text.split(',')])


def _jsonable(obj):
    if isinstance(obj, (complex, np.complexfloating)):
        return encode_complex(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj]
    raise TypeError('{!r} is not JSON serializable'.format(obj))


def dumps(data):
    return json.dumps(data, sort_keys=True, indent=2,
                      default=_jsonable) + '\n'


def write_atomic(path, text):
    """Write ``text`` to ``path`` through a temporary file and a rename."""
    dirname = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=dirname, prefix='.eigenfib-')
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def write_json(path, data):
    write_atomic(path, dumps(data))


def read_json(path):
    with open(path, encoding='utf-8') as f:
        return json.load(f)


# Fibre samples

def sample_row(step, fpoint):
    """Flatten a FiberPoint into [step, re, im, re, im, ..., phi, margin]."""
    flat = np.asarray(fpoint.matrix).ravel()
    values = np.empty(2 * flat.size)
    values[0::2] = flat.real
    values[1::2] = flat.imag
    return [step] + values.tolist() + [fpoint.phi_abs,
                                        fpoint.regularity_margin]


def sample_header(size):
    cols = ['step']
    for i in range(1, size + 1):
        for j in range(1, size + 1):
            cols += ['re_{}_{}'.format(i, j), 'im_{}_{}'.format(i, j)]
    return cols + ['phi_abs', 'regularity_margin']


def samples_csv(samples):
    """CSV text of the fibre samples, one row per step."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    if samples:
        writer.writerow(sample_header(samples[0].matrix.shape[0]))
    for step, fpoint in enumerate(samples):
        writer.writerow([repr(v) if isinstance(v, float) else v
                         for v in sample_row(step, fpoint)])
    return buf.getvalue()


def samples_jsonl(samples):
    lines = []
    for step, fpoint in enumerate(samples):
        record = {
            'step': step,
            'matrix': [[encode_complex(z) for z in row]
                       for row in fpoint.matrix],
            'phi_abs': fpoint.phi_abs,
            'regularity_margin': fpoint.regularity_margin,
        }
        lines.append(json.dumps(record, sort_keys=True))
    return ''.join(line + '\n' for line in lines)


def write_samples(path, samples):
    """Write samples as CSV, or JSON lines when ``path`` ends in .jsonl."""
    if path.endswith('.jsonl'):
        write_atomic(path, samples_jsonl(samples))
    else:
        write_atomic(path, samples_csv(samples))

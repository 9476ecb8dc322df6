"""Memoryless AWGN channel parameterized by Eb/N0.

The noise standard deviation is derived from the measured waveform energy:

    sigma^2 = E_s / (2 * (Eb/N0)_linear * bits_per_sample)

where E_s is the mean squared transmitted sample and bits_per_sample is the
net information-bit density of the stream.  With a unit-energy 2-PAM
alphabet through an orthonormal kernel (alpha = 1, no prefix) this makes
the end-to-end bit error rate equal the antipodal bound Q(sqrt(2 Eb/N0)).

Seeding accepts an int or a numpy SeedSequence; callers running blocks in
parallel derive child sequences so a fixed (seed, layout) pair reproduces
the same noise regardless of worker count.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import ParameterError
from .modem import SampleStream


@dataclass(frozen=True)
class AwgnSpec:
    eb_n0_db: float
    bits_per_sample: float
    rng_seed: object = 0  # int or numpy SeedSequence

    def __post_init__(self):
        if not self.bits_per_sample > 0:
            raise ParameterError(
                f"bits_per_sample must be > 0, got {self.bits_per_sample!r}"
            )


def measure_sample_energy(stream):
    """Mean squared sample of a stream or raw array."""
    samples = stream.samples if isinstance(stream, SampleStream) else np.asarray(stream)
    if samples.size == 0:
        raise ParameterError("stream must be nonempty")
    return float(np.mean(samples * samples))


def noise_sigma(spec, sample_energy):
    gamma = 10.0 ** (spec.eb_n0_db / 10.0)
    return float(np.sqrt(sample_energy / (2.0 * gamma * spec.bits_per_sample)))


def apply_awgn(spec, stream):
    """Add independent zero-mean Gaussian noise to every sample.

    Deterministic per seed; returns the same container type it was given.
    """
    is_stream = isinstance(stream, SampleStream)
    samples = stream.samples if is_stream else np.asarray(stream, dtype=np.float64)
    if samples.size == 0:
        raise ParameterError("stream must be nonempty")
    sigma = noise_sigma(spec, measure_sample_energy(samples))
    rng = np.random.default_rng(spec.rng_seed)
    noisy = samples + rng.normal(0.0, sigma, size=samples.shape)
    if is_stream:
        return SampleStream(samples=noisy, cp_len=stream.cp_len, n=stream.n)
    return noisy

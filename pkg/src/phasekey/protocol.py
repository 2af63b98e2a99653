"""Client/evaluator exchange: encrypt, evaluate on ciphertext, decrypt, decode.

The client encodes a bit string on coherent amplitudes, rotates every
mode by the secret key angle, and ships the ciphertext together with a
circuit description.  The evaluator applies the circuit without the key,
staying at amplitude level until the first nonlinear gate forces the
number-basis representation.  Decryption is the inverse rotation followed
by a per-mode decision, so its cost never depends on the circuit.

Wire formats are single-line JSON with a fixed field order and floats
printed at 17 significant digits, so byte-identical transcripts are
reproducible and diffable.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .encoding import (
    AmplitudeVector,
    BitString,
    PhaseKey,
    encode,
    keygen,
    phase_rotate,
    phase_rotate_fock,
)
from .evaluation import (
    Interferometer,
    NonlinearPhaseSpec,
    apply_interferometer,
    interferometer_fock,
    nonlinear_phase_evolve,
)
from .fock import CapacityError, FockVector, coherent_coefficients, coherent_fock, truncation_bound

# Nonlinear gates need the full number basis; beyond this many modes the
# (n_max+1)^m amplitudes are not materialized.
FOCK_MODE_CAP = 3

# Fock-level decode declares a mode undecodable when it overlaps neither
# candidate amplitude beyond this.
DECODE_OVERLAP_FLOOR = 1e-6


class UndecodableError(Exception):
    """Decoding cannot name a bit value for some mode."""


@dataclass(frozen=True, eq=False)
class CircuitDescription:
    """Ordered gate list; every entry is an Interferometer or NonlinearPhaseSpec."""

    gates: tuple

    def __post_init__(self):
        gates = tuple(self.gates)
        for g in gates:
            if not isinstance(g, (Interferometer, NonlinearPhaseSpec)):
                raise ValueError(f"unsupported gate object: {type(g).__name__}")
        object.__setattr__(self, "gates", gates)

    def has_nonlinear(self) -> bool:
        return any(isinstance(g, NonlinearPhaseSpec) for g in self.gates)

    def __len__(self) -> int:
        return len(self.gates)


@dataclass(frozen=True, eq=False)
class CipherText:
    """The wire object: representation tag, payload, and shape metadata.

    Deliberately carries neither d nor the key; only the mode count and,
    for the number-basis representation, the cutoff.
    """

    repr_tag: str
    payload: object
    m: int
    cutoff: "int | None" = None

    def __post_init__(self):
        if self.repr_tag == "amplitude":
            if not isinstance(self.payload, AmplitudeVector) or self.cutoff is not None:
                raise ValueError("amplitude ciphertext needs an AmplitudeVector and no cutoff")
            if self.payload.modes != self.m:
                raise ValueError("mode count metadata disagrees with the payload")
        elif self.repr_tag == "fock":
            if not isinstance(self.payload, FockVector) or self.cutoff is None:
                raise ValueError("fock ciphertext needs a FockVector and a cutoff")
            if self.payload.modes != self.m or self.payload.cutoff != self.cutoff:
                raise ValueError("shape metadata disagrees with the payload")
        else:
            raise ValueError(f"unknown representation tag {self.repr_tag!r}")


def wire_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("wire formats only carry finite floats")
    return format(x, ".17g")


def _pairs(values) -> str:
    return "[" + ",".join(f"[{wire_float(z.real)},{wire_float(z.imag)}]" for z in values) + "]"


def ciphertext_to_json(ct: CipherText) -> str:
    body = f'{{"type":"ciphertext","repr":"{ct.repr_tag}","m":{ct.m},"payload":{_pairs(ct.payload.amps)}'
    if ct.repr_tag == "fock":
        body += f',"cutoff":{ct.cutoff}'
    return body + "}"


def ciphertext_from_json(text: str) -> CipherText:
    obj = json.loads(text)
    if not isinstance(obj, dict) or obj.get("type") != "ciphertext":
        raise ValueError('expected an object with "type": "ciphertext"')
    tag = obj.get("repr")
    m = obj.get("m")
    payload = obj.get("payload")
    if tag not in ("amplitude", "fock"):
        raise ValueError(f"unknown ciphertext repr {tag!r}")
    if not isinstance(m, int) or m < 1:
        raise ValueError("ciphertext field m must be a positive integer")
    if not isinstance(payload, list):
        raise ValueError("ciphertext payload must be a list of [re, im] pairs")
    try:
        amps = np.array([complex(re, im) for re, im in payload])
    except (TypeError, ValueError) as exc:
        raise ValueError(f"malformed payload entry: {exc}") from None
    if tag == "amplitude":
        if len(amps) != m:
            raise ValueError("amplitude payload length must equal m")
        return CipherText(repr_tag="amplitude", payload=AmplitudeVector(amps), m=m)
    cutoff = obj.get("cutoff")
    if not isinstance(cutoff, int) or cutoff < 0:
        raise ValueError("fock ciphertext needs a nonnegative integer cutoff")
    if len(amps) != (cutoff + 1) ** m:
        raise ValueError("fock payload length must equal (cutoff+1)^m")
    return CipherText(repr_tag="fock", m=m, cutoff=cutoff,
                      payload=FockVector(cutoff=cutoff, modes=m, amps=amps))


def _gate_to_json(gate) -> str:
    if isinstance(gate, Interferometer):
        rows = ",".join(_pairs(row) for row in gate.u)
        return f'{{"kind":"interferometer","matrix":[{rows}]}}'
    terms = ",".join(
        '{"exps":[' + ",".join(str(e) for e in exps) + f'],"g":{wire_float(g)}}}'
        for exps, g in gate.terms.items())
    return f'{{"kind":"nonlinear","terms":[{terms}],"t":{wire_float(gate.t)}}}'


def circuit_to_json(circuit: CircuitDescription) -> str:
    gates = ",".join(_gate_to_json(g) for g in circuit.gates)
    return f'{{"type":"circuit","gates":[{gates}]}}'


def _gate_from_obj(obj, index: int):
    where = f"circuit gate {index}"
    if not isinstance(obj, dict):
        raise ValueError(f"{where}: expected an object")
    kind = obj.get("kind")
    if kind == "interferometer":
        matrix = obj.get("matrix")
        if not isinstance(matrix, list):
            raise ValueError(f"{where}: matrix must be a list of rows")
        try:
            u = np.array([[complex(re, im) for re, im in row] for row in matrix])
        except (TypeError, ValueError) as exc:
            raise ValueError(f"{where}: malformed matrix entry: {exc}") from None
        return Interferometer(u)
    if kind == "nonlinear":
        terms = obj.get("terms")
        if not isinstance(terms, list) or not terms:
            raise ValueError(f"{where}: terms must be a nonempty list")
        parsed = {}
        for t in terms:
            if not isinstance(t, dict) or "exps" not in t or "g" not in t:
                raise ValueError(f'{where}: each term needs "exps" and "g"')
            parsed[tuple(int(e) for e in t["exps"])] = float(t["g"])
        return NonlinearPhaseSpec(terms=parsed, t=float(obj.get("t", 1.0)))
    raise ValueError(f"{where}: unknown kind {kind!r}")


def circuit_from_json(text: str) -> CircuitDescription:
    obj = json.loads(text)
    if not isinstance(obj, dict) or obj.get("type") != "circuit":
        raise ValueError('expected an object with "type": "circuit"')
    gates = obj.get("gates")
    if not isinstance(gates, list):
        raise ValueError("circuit gates must be a list")
    return CircuitDescription(tuple(_gate_from_obj(g, i) for i, g in enumerate(gates)))


def client_encrypt(x: BitString, alpha: complex, key: PhaseKey) -> CipherText:
    """Encode x on coherent amplitudes and rotate every mode by the key angle."""
    rotated = phase_rotate(encode(x, alpha), key.theta)
    return CipherText(repr_tag="amplitude", payload=rotated, m=len(x))


def evaluator_apply(circuit: CircuitDescription, ct: CipherText,
                    n_max: "int | None" = None) -> CipherText:
    """Run the circuit on a ciphertext, never seeing the key.

    Interferometers act on coherent amplitudes directly; the first
    nonlinear gate expands the state into the number basis (mode count
    capped at FOCK_MODE_CAP) with a cutoff from the ciphertext's total
    energy unless n_max is given.
    """
    tag = ct.repr_tag
    state = ct.payload
    for gate in circuit.gates:
        if gate.modes != ct.m:
            raise ValueError("gate size must match the ciphertext mode count")
        if isinstance(gate, Interferometer):
            if tag == "amplitude":
                state = apply_interferometer(gate, state)
            else:
                state = interferometer_fock(gate, state)
        else:
            if tag == "amplitude":
                if ct.m > FOCK_MODE_CAP:
                    raise CapacityError(
                        f"nonlinear gates are limited to {FOCK_MODE_CAP} modes, got {ct.m}")
                if n_max is None:
                    n_max = truncation_bound(state.total_energy())
                state = coherent_fock(state.amps, n_max)
                tag = "fock"
            state = nonlinear_phase_evolve(gate, state)
    if tag == "amplitude":
        return CipherText(repr_tag="amplitude", payload=state, m=ct.m)
    return CipherText(repr_tag="fock", payload=state, m=ct.m, cutoff=state.cutoff)


def _decrypt_state(ct: CipherText, key: PhaseKey) -> CipherText:
    """Inverse rotation on every mode; representation is preserved."""
    if ct.repr_tag == "amplitude":
        return CipherText(repr_tag="amplitude", m=ct.m,
                          payload=phase_rotate(ct.payload, -key.theta))
    return CipherText(repr_tag="fock", m=ct.m, cutoff=ct.cutoff,
                      payload=phase_rotate_fock(ct.payload, -key.theta))


def _decode_amplitude(v: AmplitudeVector, alpha: complex) -> BitString:
    bits = []
    for out in v.amps:
        bits.append(0 if abs(out - alpha) <= abs(out + alpha) else 1)
    return BitString(tuple(bits))


def _decode_fock(psi: FockVector, alpha: complex) -> BitString:
    tensor = psi.amps.reshape((psi.cutoff + 1,) * psi.modes)
    candidates = [coherent_coefficients(alpha, psi.cutoff),
                  coherent_coefficients(-alpha, psi.cutoff)]
    bits = []
    for mode in range(psi.modes):
        scores = [np.linalg.norm(np.tensordot(c.conj(), tensor, axes=([0], [mode])))
                  for c in candidates]
        if max(scores) < DECODE_OVERLAP_FLOOR:
            raise UndecodableError(
                f"mode {mode} overlaps neither candidate amplitude above "
                f"{DECODE_OVERLAP_FLOOR:g}")
        bits.append(0 if scores[0] >= scores[1] else 1)
    return BitString(tuple(bits))


def client_decrypt_decode(ct: CipherText, key: PhaseKey, alpha: complex) -> BitString:
    """Undo the key rotation and read one bit per mode.

    Amplitude-level modes decode by the nearest of +-alpha; number-basis
    modes by the larger overlap magnitude with |+-alpha>.  The work is m
    rotations and m decisions however long the evaluated circuit was.
    """
    if alpha == 0:
        raise UndecodableError("the code is degenerate at alpha = 0")
    plain = _decrypt_state(ct, key)
    if plain.repr_tag == "amplitude":
        return _decode_amplitude(plain.payload, alpha)
    return _decode_fock(plain.payload, alpha)


@dataclass
class Transcript:
    """Everything one protocol run produced, serializable as JSON lines."""

    m: int
    d: int
    alpha: complex
    seed: int
    key: PhaseKey
    sent: CipherText
    circuit: CircuitDescription
    returned: CipherText
    decrypt_ops: dict
    correctness: dict
    y: "BitString | None"
    y_reference: "BitString | None"
    flags: list = field(default_factory=list)

    @property
    def correct(self) -> bool:
        return bool(self.correctness.get("pass", False))

    def wire_messages(self) -> list:
        """The three messages an eavesdropper would see, as wire JSON."""
        return [ciphertext_to_json(self.sent), circuit_to_json(self.circuit),
                ciphertext_to_json(self.returned)]

    def to_jsonl(self) -> str:
        lines = [
            f'{{"type":"params","m":{self.m},"d":{self.d},'
            f'"alpha":[{wire_float(self.alpha.real)},{wire_float(self.alpha.imag)}],"seed":{self.seed}}}',
            f'{{"type":"key","holder":"client","k":{self.key.k},"d":{self.key.d}}}',
            f'{{"type":"message","direction":"client->evaluator","body":{ciphertext_to_json(self.sent)}}}',
            f'{{"type":"message","direction":"client->evaluator","body":{circuit_to_json(self.circuit)}}}',
            f'{{"type":"message","direction":"evaluator->client","body":{ciphertext_to_json(self.returned)}}}',
            f'{{"type":"decrypt_ops","phase_rotations":{self.decrypt_ops["phase_rotations"]},'
            f'"decode_decisions":{self.decrypt_ops["decode_decisions"]}}}',
            f'{{"type":"correctness","metric":"{self.correctness["metric"]}",'
            f'"value":{wire_float(self.correctness["value"])},'
            f'"pass":{"true" if self.correctness["pass"] else "false"}}}',
        ]
        y = "null" if self.y is None else f'"{self.y.to_text()}"'
        ref = "null" if self.y_reference is None else f'"{self.y_reference.to_text()}"'
        match = "true" if (self.y is not None and self.y == self.y_reference) else "false"
        flags = ",".join(f'"{f}"' for f in self.flags)
        lines.append(f'{{"type":"output","y":{y},"reference":{ref},"match":{match},'
                     f'"flags":[{flags}]}}')
        return "\n".join(lines) + "\n"


def run_protocol(x: BitString, alpha: complex, d: int, circuit: CircuitDescription,
                 seed: int) -> Transcript:
    """One full exchange plus the plaintext reference run and its audit.

    Correctness compares the decrypted state against direct plaintext
    evaluation: entrywise at amplitude level, by overlap once a nonlinear
    gate has forced the number basis.  Degenerate parameter choices are
    flagged rather than rejected so sweeps can pass through them.
    """
    m = len(x)
    alpha = complex(alpha)
    key = keygen(d, seed)
    flags = []
    if d == 1:
        flags.append("no security: trivial key space")
    if alpha == 0:
        flags.append("degenerate code: alpha = 0")

    n_max = None
    if circuit.has_nonlinear() and m <= FOCK_MODE_CAP:
        # one shared cutoff keeps the encrypted and reference paths comparable
        n_max = truncation_bound(m * abs(alpha) ** 2)

    sent = client_encrypt(x, alpha, key)
    returned = evaluator_apply(circuit, sent, n_max=n_max)
    decrypted = _decrypt_state(returned, key)

    reference = evaluator_apply(
        circuit, CipherText(repr_tag="amplitude", payload=encode(x, alpha), m=m),
        n_max=n_max)

    if decrypted.repr_tag == "amplitude":
        diff = float(np.abs(decrypted.payload.amps - reference.payload.amps).max())
        correctness = {"metric": "amplitude", "value": diff, "pass": diff <= 1e-12}
    else:
        a = decrypted.payload.amps
        b = reference.payload.amps
        fid = float(abs(np.vdot(a, b)) / (np.linalg.norm(a) * np.linalg.norm(b)))
        correctness = {"metric": "overlap", "value": fid, "pass": fid >= 1 - 1e-8}

    trivial_key = PhaseKey(k=0, d=1)
    try:
        y = client_decrypt_decode(returned, key, alpha)
        y_reference = client_decrypt_decode(reference, trivial_key, alpha)
    except UndecodableError as exc:
        y = None
        y_reference = None
        flags.append(f"undecodable: {exc}")

    return Transcript(
        m=m, d=d, alpha=alpha, seed=seed, key=key, sent=sent, circuit=circuit,
        returned=returned,
        decrypt_ops={"phase_rotations": m, "decode_decisions": m},
        correctness=correctness, y=y, y_reference=y_reference, flags=flags)

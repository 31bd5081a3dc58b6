"""Command-line surface: key and attestation management, chain building,
setup/prove/verify, benchmarking, and the bundled railway demo.

Exit codes: 0 success, 1 verification failure, 2 usage or I/O error.
Every command accepts --json for machine-readable output on stdout.
"""

from __future__ import annotations

import hashlib
import json
import random
import sys
import time
from pathlib import Path

import click

from .attestation.chains import (
    attest_doc,
    attest_role,
    chains_from_tree,
    count_signatures,
    verify_chain,
)
from .attestation.model import DocInfo, RoleInfo
from .attestation.processspec import ProcessSpec, SpecError
from .attestation.serialize import (
    SerializeError,
    doc_attestation_to_dict,
    read_chain,
    role_attestation_to_dict,
)
from .bench import BenchConfig, emit_table, run_scaling
from .crypto import bjj, eddsa
from .crypto.keyfile import KeyFileError, load_key, write_keypair
from .policy import chain_policy_eval, compute_ref, phase_policy_eval
from .policy.railway import railway_phase1_spec
from .snark import artifacts, groth16
from .snark.r1cs import UnsatisfiedConstraint
from .snark.relation import RelationParams, build_witness, public_inputs, synthesize
from .workspace import Workspace, WorkspaceError

EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2


def _emit(as_json: bool, payload: dict, human: str | None = None) -> None:
    if as_json:
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    elif human:
        click.echo(human)


def _die(message: str, code: int = EXIT_USAGE):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_spec_arg(spec_path: str | None, workspace: str | None) -> ProcessSpec:
    try:
        if spec_path:
            return ProcessSpec.load(spec_path)
        if workspace:
            return Workspace(workspace).load_spec()
    except (SpecError, WorkspaceError) as e:
        _die(str(e))
    _die("provide --spec or --workspace")


def _parse_rpk(value: str) -> bjj.Point:
    path = Path(value)
    if path.exists():
        try:
            return load_key(path).pk
        except KeyFileError as e:
            _die(str(e))
    try:
        pk = bjj.decompress(bytes.fromhex(value))
    except ValueError:
        pk = None
    if pk is None:
        _die(f"root key {value!r} is neither a key file nor a compressed point")
    return pk


def _parse_seed(seed: str | None) -> bytes | None:
    if seed is None:
        return None
    try:
        raw = bytes.fromhex(seed)
    except ValueError:
        _die("seed must be hex")
    if len(raw) > 32:
        _die("seed must be at most 32 bytes of hex")
    return raw.rjust(32, b"\x00")


def _parse_permissions(spec: ProcessSpec | None, value: str) -> int:
    if value.isdigit():
        return int(value)
    if spec is None:
        _die("named permissions require --spec")
    mask = 0
    for name in value.split(","):
        mask |= spec.doctype_code(name.strip())
    return mask


@click.group()
def main():
    """Attestation trees with zero-knowledge phase proofs."""


@main.command()
@click.argument("role_id")
@click.option("--seed", default=None, help="hex seed (at most 32 bytes) for deterministic keys")
@click.option("--workspace", default=None, type=click.Path(), help="write into the workspace key directory")
@click.option("--out", default=None, type=click.Path(), help="explicit output file")
@click.option("--json", "as_json", is_flag=True)
def keygen(role_id, seed, workspace, out, as_json):
    """Generate a key pair for a role."""
    kp = eddsa.kgen(_parse_seed(seed))
    if out:
        path = Path(out)
        write_keypair(path, kp)
    elif workspace:
        ws = Workspace(workspace)
        path = ws.write_key(role_id, kp)
    else:
        path = Path(f"{role_id}.json")
        write_keypair(path, kp)
    _emit(as_json, {"role": role_id, "key_file": str(path), "pk": kp.pk_bytes().hex()},
          f"wrote key for {role_id}: {path}")


@main.command("attest-role")
@click.argument("attestor_keyfile", type=click.Path(exists=True))
@click.argument("subject_keyfile", type=click.Path(exists=True))
@click.argument("permissions")
@click.option("--spec", "spec_path", default=None, type=click.Path(exists=True))
@click.option("--out", default=None, type=click.Path())
@click.option("--json", "as_json", is_flag=True)
def attest_role_cmd(attestor_keyfile, subject_keyfile, permissions, spec_path, out, as_json):
    """Sign a role assignment: attestor grants SUBJECT the given permissions
    (integer mask, or comma-separated doctype names with --spec)."""
    spec = ProcessSpec.load(spec_path) if spec_path else None
    try:
        attestor = load_key(attestor_keyfile)
        subject = load_key(subject_keyfile)
    except KeyFileError as e:
        _die(str(e))
    if attestor.sk == 0:
        _die("attestor key file has no secret part")
    mask = _parse_permissions(spec, permissions)
    att = attest_role(attestor.sk, subject.pk, RoleInfo(mask))
    doc = role_attestation_to_dict(att)
    path = Path(out) if out else Path("role_attestation.json")
    path.write_text(json.dumps(doc, indent=2) + "\n")
    _emit(as_json, {"attestation_file": str(path), "permissions": mask},
          f"wrote role attestation: {path}")


@main.command("attest-doc")
@click.argument("author_keyfile", type=click.Path(exists=True))
@click.argument("doctype")
@click.argument("document_path", type=click.Path(exists=True))
@click.option("--workspace", required=True, type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True)
def attest_doc_cmd(author_keyfile, doctype, document_path, workspace, as_json):
    """Sign a document: its identifier is the SHA-256 of the file, the
    reference digest is resolved from the spec and the attested documents
    already present in the workspace."""
    ws = Workspace(workspace)
    spec = _load_spec_arg(None, workspace)
    try:
        author = load_key(author_keyfile)
    except KeyFileError as e:
        _die(str(e))
    if author.sk == 0:
        _die("author key file has no secret part")
    try:
        code = spec.doctype_code(doctype)
    except SpecError as e:
        _die(str(e))
    identifier = hashlib.sha256(Path(document_path).read_bytes()).digest()
    referenced = dict(spec.phase_policy().references).get(code, ())
    known = ws.doc_identifiers(spec)
    missing = [spec.doctype_name(c) for c in referenced if c not in known]
    if missing:
        _die(f"cannot resolve references for {doctype}: attest {', '.join(missing)} first")
    ref = compute_ref([known[c] for c in referenced], spec.hash_config)
    att = attest_doc(author.sk, DocInfo(doctype=code, identifier=identifier, ref=ref))
    ws.attestations_dir.mkdir(parents=True, exist_ok=True)
    path = ws.doc_attestation_path(doctype)
    path.write_text(json.dumps(doc_attestation_to_dict(att, spec.content_hash()), indent=2) + "\n")
    _emit(as_json, {
        "attestation_file": str(path),
        "identifier": identifier.hex(),
        "ref": ref.hex(),
    }, f"wrote document attestation: {path}")


@main.command("build-chains")
@click.option("--workspace", required=True, type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True)
def build_chains_cmd(workspace, as_json):
    """Build one padded attestation chain per document from workspace keys
    and attested document identifiers."""
    ws = Workspace(workspace)
    spec = _load_spec_arg(None, workspace)
    try:
        keys = ws.load_keys(spec)
        identifiers = ws.doc_identifiers(spec)
        missing = [name for name, code in spec.doctypes if code not in identifiers]
        if missing:
            _die(f"documents not attested yet: {', '.join(missing)}")
        chains = chains_from_tree(spec.tree(), keys, identifiers, spec.hash_config)
        paths = ws.write_chains(spec, chains)
    except (WorkspaceError, ValueError) as e:
        _die(str(e))
    total, unique = count_signatures(chains)
    _emit(as_json, {
        "chains": [str(p) for p in paths],
        "total_signature_slots": total,
        "unique_signatures": unique,
    }, f"built {len(paths)} chains ({total} signature slots, {unique} unique signatures)")


@main.command("verify-chains")
@click.argument("chain_files", nargs=-1, type=click.Path(exists=True))
@click.option("--spec", "spec_path", default=None, type=click.Path(exists=True))
@click.option("--workspace", default=None, type=click.Path(exists=True))
@click.option("--rpk", default=None, help="root key file or compressed point hex")
@click.option("--json", "as_json", is_flag=True)
def verify_chains_cmd(chain_files, spec_path, workspace, rpk, as_json):
    """Verify chains natively: signatures, chain policy, and (when the full
    slot set is present) the phase policy."""
    spec = _load_spec_arg(spec_path, workspace)
    if not chain_files and workspace:
        chain_files = sorted(str(p) for p in Workspace(workspace).chains_dir.glob("chain_*.json"))
    if not chain_files:
        _die("no chain files given")
    root_pk = _parse_rpk(rpk) if rpk else None
    universe = spec.universe
    cfg_chain = spec.chain_policy()
    results = []
    by_slot = {}
    all_ok = True
    for path in chain_files:
        try:
            chain, slot = read_chain(path, spec.content_hash())
        except SerializeError as e:
            _die(f"{path}: {e}")
        sig_ok = verify_chain(chain)
        policy_ok = chain_policy_eval(chain.dinfo, [*chain.rinfos, universe], cfg_chain)
        height_ok = chain.signature_count == spec.height
        root_ok = chain.terminal_pk == root_pk if root_pk else True
        ok = sig_ok and policy_ok and height_ok and root_ok
        all_ok &= ok
        by_slot[slot] = chain
        results.append({
            "file": str(path), "slot": slot, "signatures": sig_ok,
            "chain_policy": policy_ok, "height": height_ok,
            **({"root_key": root_ok} if root_pk else {}),
            "ok": ok,
        })
    phase_ok = None
    if set(by_slot) == set(range(spec.chain_count)):
        dinfos = [by_slot[i].dinfo for i in range(spec.chain_count)]
        phase_ok = phase_policy_eval(dinfos, spec.phase_policy(), spec.hash_config)
        all_ok &= phase_ok
    payload = {"chains": results, "phase_policy": phase_ok, "ok": all_ok}
    lines = [
        f"{'PASS' if r['ok'] else 'FAIL'} slot {r['slot']}: {r['file']}" for r in results
    ]
    if phase_ok is not None:
        lines.append(f"{'PASS' if phase_ok else 'FAIL'} phase policy")
    _emit(as_json, payload, "\n".join(lines))
    if not all_ok:
        sys.exit(EXIT_VERIFY_FAILED)


@main.command()
@click.option("--workspace", required=True, type=click.Path(exists=True))
@click.option("--seed", default=None, type=int, help="RNG seed for reproducible setup (testing only)")
@click.option("--json", "as_json", is_flag=True)
def setup(workspace, seed, as_json):
    """Run the trusted setup for the workspace's process description and
    write proving/verification keys."""
    ws = Workspace(workspace)
    spec = _load_spec_arg(None, workspace)
    params = RelationParams.from_spec(spec)
    t0 = time.perf_counter()
    cs = synthesize(params)
    rng = random.Random(seed) if seed is not None else random.SystemRandom()
    pk, vk = groth16.setup(cs, spec.content_hash(), rng)
    elapsed = time.perf_counter() - t0
    ws.artifacts_dir.mkdir(parents=True, exist_ok=True)
    pk_path = ws.artifacts_dir / "proving_key.bin"
    vk_path = ws.artifacts_dir / "verification_key.bin"
    artifacts.write_proving_key(pk_path, pk)
    vk_path.write_bytes(artifacts.vk_to_bytes(vk))
    _emit(as_json, {
        "proving_key": str(pk_path), "verification_key": str(vk_path),
        "constraints": cs.num_constraints, "seconds": round(elapsed, 3),
    }, f"setup done in {elapsed:.1f}s ({cs.num_constraints} constraints)\n"
       f"  proving key: {pk_path}\n  verification key: {vk_path}")


@main.command()
@click.option("--workspace", required=True, type=click.Path(exists=True))
@click.option("--rpk", required=True, help="root key file or compressed point hex")
@click.option("--out", default=None, type=click.Path())
@click.option("--json", "as_json", is_flag=True)
def prove(workspace, rpk, out, as_json):
    """Prove that the workspace's chains execute the phase correctly."""
    ws = Workspace(workspace)
    spec = _load_spec_arg(None, workspace)
    root_pk = _parse_rpk(rpk)
    pk_path = ws.artifacts_dir / "proving_key.bin"
    if not pk_path.exists():
        _die(f"no proving key at {pk_path}; run setup first")
    try:
        chains = ws.load_chains(spec)
        pk = artifacts.read_proving_key(pk_path)
    except (WorkspaceError, artifacts.ArtifactError) as e:
        _die(str(e))
    params = RelationParams.from_spec(spec)
    t0 = time.perf_counter()
    try:
        csw = build_witness(params, chains, root_pk)
        proof = groth16.prove(pk, csw, spec.content_hash(), random.SystemRandom())
    except UnsatisfiedConstraint as e:
        _emit(as_json, {"ok": False, "error": str(e)}, f"proving failed: {e}")
        sys.exit(EXIT_VERIFY_FAILED)
    except (groth16.ProofError, groth16.ContextMismatch, ValueError) as e:
        _die(str(e))
    elapsed = time.perf_counter() - t0
    path = Path(out) if out else ws.artifacts_dir / "proof.bin"
    path.write_bytes(artifacts.proof_to_bytes(proof))
    _emit(as_json, {"proof": str(path), "seconds": round(elapsed, 3)},
          f"proof written to {path} ({elapsed:.1f}s)")


@main.command()
@click.argument("vk_file", type=click.Path(exists=True))
@click.argument("rpk")
@click.argument("proof_file", type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True)
def verify(vk_file, rpk, proof_file, as_json):
    """Verify a phase proof against a root public key."""
    try:
        vk = artifacts.vk_from_bytes(Path(vk_file).read_bytes())
        proof = artifacts.proof_from_bytes(Path(proof_file).read_bytes())
    except artifacts.ArtifactError as e:
        _die(str(e))
    root_pk = _parse_rpk(rpk)
    ok = groth16.verify(vk, public_inputs(root_pk), proof)
    _emit(as_json, {"ok": ok}, "proof OK" if ok else "proof REJECTED")
    if not ok:
        sys.exit(EXIT_VERIFY_FAILED)


@main.command()
@click.option("--grid", default="1x1,2x1,2x2", help="comma list of LxN points")
@click.option("--reps", default=1, show_default=True)
@click.option("--csv", "csv_path", default=None, type=click.Path())
@click.option("--format", "fmt", default="markdown", type=click.Choice(["markdown", "csv"]))
@click.option("--seed", default=0, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def bench(grid, reps, csv_path, fmt, seed, as_json):
    """Measure compile/setup/prove across a grid of (chains x height)."""
    try:
        points = []
        for part in grid.split(","):
            l_str, n_str = part.lower().split("x")
            points.append((int(l_str), int(n_str)))
        cfg = BenchConfig(grid=tuple(points), repetitions=reps, seed=seed)
    except ValueError as e:
        _die(f"bad grid {grid!r}: {e}")
    report = run_scaling(cfg, progress=not as_json)
    if csv_path:
        Path(csv_path).write_text(emit_table(report, "csv"))
    if as_json:
        _emit(True, {
            "rows": [vars(r) for r in report.sorted_rows()],
            "fits": report.fits,
            **({"csv": csv_path} if csv_path else {}),
        })
    else:
        click.echo(emit_table(report, fmt))


@main.command("export-verifier")
@click.argument("vk_file", type=click.Path(exists=True))
@click.option("--out", default="verifier.json", type=click.Path(), show_default=True)
@click.option("--json", "as_json", is_flag=True)
def export_verifier(vk_file, out, as_json):
    """Write the verification key and public-input layout as a JSON bundle
    for external verifiers."""
    try:
        vk = artifacts.vk_from_bytes(Path(vk_file).read_bytes())
    except artifacts.ArtifactError as e:
        _die(str(e))
    artifacts.write_verifier_export(out, vk)
    _emit(as_json, {"bundle": str(out)}, f"wrote verifier bundle: {out}")


@main.command("demo-railway")
@click.option("--workspace", required=True, type=click.Path())
@click.option("--seed", default="00", help="hex seed for deterministic keys and documents")
@click.option("--ref-hash", default="sha256", type=click.Choice(["sha256", "poseidon"]), show_default=True)
@click.option("--json", "as_json", is_flag=True)
def demo_railway(workspace, seed, ref_hash, as_json):
    """Regenerate the bundled railway phase-1 workspace: spec, role keys,
    deterministic demo documents, attestations, and verified chains."""
    seed_bytes = _parse_seed(seed)
    ws = Workspace(workspace)
    ws.ensure_layout()
    spec = railway_phase1_spec(ref_hash=ref_hash)
    spec.save(ws.spec_path)
    keys = {}
    for rid in spec.role_ids():
        kp = eddsa.kgen(eddsa.derive_seed(b"railway-demo", seed_bytes, rid.encode()))
        ws.write_key(rid, kp)
        keys[rid] = kp
    spec_hash = spec.content_hash()
    identifiers = {}
    for name, code in spec.doctypes:
        payload = b"railway demo document %s seed %s\n" % (name.encode(), seed_bytes.hex().encode())
        (ws.documents_dir / f"{name}.bin").write_bytes(payload)
        identifiers[code] = hashlib.sha256(payload).digest()
    refs = dict(spec.phase_policy().references)
    for doc_name, author, ref_names in spec.documents:
        code = spec.doctype_code(doc_name)
        ref = compute_ref([identifiers[c] for c in refs.get(code, ())], spec.hash_config)
        att = attest_doc(keys[author].sk, DocInfo(doctype=code, identifier=identifiers[code], ref=ref))
        ws.doc_attestation_path(doc_name).write_text(
            json.dumps(doc_attestation_to_dict(att, spec_hash), indent=2) + "\n"
        )
    chains = chains_from_tree(spec.tree(), keys, identifiers, spec.hash_config)
    paths = ws.write_chains(spec, chains)
    total, unique = count_signatures(chains)
    _emit(as_json, {
        "workspace": str(ws.root),
        "spec": str(ws.spec_path),
        "root_key": str(ws.key_path(spec.root_role)),
        "chains": len(paths),
        "total_signature_slots": total,
        "unique_signatures": unique,
    }, f"railway workspace ready at {ws.root}\n"
       f"  {len(paths)} chains, {total} signature slots ({unique} unique)\n"
       f"  next: attestree setup --workspace {ws.root} && "
       f"attestree prove --workspace {ws.root} --rpk {ws.key_path(spec.root_role)}")


if __name__ == "__main__":
    main()

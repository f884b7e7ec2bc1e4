use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn ngsim(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ngsim")).args(args).arg("--out").arg(out).output().expect("failed to spawn ngsim")
}

fn edge_lines(text: &str) -> usize {
    text.lines().skip(1).take_while(|l| !l.starts_with('#')).filter(|l| !l.trim().is_empty()).count()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn gen_graph_complete_and_lattice() {
    let dir = tempfile::tempdir().unwrap();
    let o = ngsim(&["gen-graph", "--set", "topology.kind=complete", "--set", "topology.n=4"], dir.path());
    assert!(o.status.success());
    let text = fs::read_to_string(dir.path().join("graph.txt")).unwrap();
    assert_eq!(edge_lines(&text), 6);
    assert!(stdout(&o).contains("components=1"));

    let o = ngsim(
        &[
            "gen-graph",
            "--set",
            "topology.kind=lattice2d",
            "--set",
            "topology.side=3",
            "--set",
            "topology.periodic=true",
        ],
        dir.path(),
    );
    assert!(o.status.success());
    let text = fs::read_to_string(dir.path().join("graph.txt")).unwrap();
    assert_eq!(edge_lines(&text), 18);
}

#[test]
fn rgg_graph_reads_back() {
    let dir = tempfile::tempdir().unwrap();
    let o = ngsim(&["gen-graph", "--set", "topology.n=300", "--set", "topology.k=10"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(dir.path().join("graph.txt")).unwrap();
    let g = naming_rgg::topology::read_edge_list(text.as_bytes()).unwrap();
    assert_eq!(g.node_count(), 300);
    assert!(g.is_spatial());
    assert!(naming_rgg::topology::is_connected(&g));
}

#[test]
fn one_step_consensus_times() {
    // Broadcast on a complete graph: the first invention reaches everyone.
    let dir = tempfile::tempdir().unwrap();
    let o = ngsim(&["run", "--set", "topology.kind=complete", "--set", "topology.n=16"], dir.path());
    assert!(o.status.success());
    assert!(stdout(&o).contains("t_c=0.0625\n"), "{}", stdout(&o));

    let o = ngsim(&["run", "--set", "topology.kind=complete", "--set", "topology.n=2"], dir.path());
    assert!(o.status.success());
    assert!(stdout(&o).contains("t_c=0.5\n"), "{}", stdout(&o));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = ngsim(&["run", "--set", "topology.n=abc"], dir.path());
    assert_eq!(bad.status.code(), Some(2));
    let unknown = ngsim(&["run", "--preset", "nope"], dir.path());
    assert_eq!(unknown.status.code(), Some(2));
    let disconnected = ngsim(
        &["gen-graph", "--set", "topology.n=200", "--set", "topology.k=1", "--set", "topology.connectivity=regenerate"],
        dir.path(),
    );
    assert_eq!(disconnected.status.code(), Some(3));
    let slow = ngsim(
        &["run", "--set", "topology.kind=lattice2d", "--set", "topology.side=30", "--set", "run.max_time=1"],
        dir.path(),
    );
    assert_eq!(slow.status.code(), Some(4));
    // Outputs are still written before the non-zero exit.
    assert!(dir.path().join("series.csv").exists());
    let blocked = tempfile::NamedTempFile::new().unwrap();
    let io = ngsim(&["gen-graph", "--set", "topology.kind=complete"], &blocked.path().join("sub"));
    assert_eq!(io.status.code(), Some(5));
}

#[test]
fn outputs_are_reproducible_across_worker_counts() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["ensemble", "--set", "topology.n=256", "--set", "topology.k=12", "--runs", "12", "--seed", "7"];
    let oa = ngsim(&[&args[..], &["--workers", "1"]].concat(), a.path());
    let ob = ngsim(&[&args[..], &["--workers", "3"]].concat(), b.path());
    assert!(oa.status.success() && ob.status.success());
    for name in ["ensemble.csv", "summary.csv", "fits.txt"] {
        let x = fs::read(a.path().join(name)).unwrap();
        let y = fs::read(b.path().join(name)).unwrap();
        assert_eq!(x, y, "{name} differs");
    }
    let header = fs::read_to_string(a.path().join("ensemble.csv")).unwrap();
    assert!(header.starts_with("t,nw_mean,nw_std,nd_mean,nd_std,s_mean,s_std\n"));
}

#[test]
fn snapshots_and_sweep_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = ngsim(&["run", "--preset", "fig1", "--set", "topology.n=200"], dir.path());
    assert!(o.status.success());
    for i in 0..4 {
        let text = fs::read_to_string(dir.path().join(format!("snapshot_{i}.csv"))).unwrap();
        let rows = text.lines().filter(|l| !l.starts_with('#')).count();
        assert_eq!(rows, 200);
    }
    let o = ngsim(
        &[
            "sweep",
            "--set",
            "topology.k=12",
            "--set",
            "sweep.axis=n",
            "--set",
            "sweep.values=128,256,512",
            "--runs",
            "8",
        ],
        dir.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let table = fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    assert_eq!(table.lines().count(), 4);
    assert!(dir.path().join("ensemble_2.csv").exists());
}

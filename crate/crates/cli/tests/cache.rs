use std::fs;
use std::process::Command;
use std::sync::Arc;
use std::thread;

use zhu_lab::cache::{sha256_hex, Cache, CacheEntry, CacheStatus, Lookup};

const KIND: &str = "test";
const MATERIAL: &str = r#"{"n":1}"#;

#[test]
fn store_then_load_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let payload = r#"{"dims":[1,1,2],"x":"3/2"}"#;
    cache.store(KIND, MATERIAL, payload).unwrap();
    assert_eq!(cache.load(KIND, MATERIAL), Lookup::Hit(payload.to_string()));
    assert_eq!(cache.load(KIND, "{}"), Lookup::Miss);
}

#[test]
fn version_bump_invalidates_entries() {
    let dir = tempfile::tempdir().unwrap();
    Cache::with_version(dir.path(), "v1").store(KIND, MATERIAL, "1").unwrap();
    let v2 = Cache::with_version(dir.path(), "v2");
    assert_eq!(v2.load(KIND, MATERIAL), Lookup::Stale { found: "v1".into() });

    let mut calls = 0;
    let (v, status, note) = v2
        .get_or_compute::<u32, ()>(KIND, MATERIAL, || {
            calls += 1;
            Ok(2)
        })
        .unwrap();
    assert_eq!((v, status, calls), (2, CacheStatus::Computed, 1));
    assert!(note.unwrap().contains("v1"));
    assert_eq!(v2.load(KIND, MATERIAL), Lookup::Hit("2".into()));
}

#[test]
fn checksum_mismatch_forces_recomputation() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let path = cache.store(KIND, MATERIAL, "41").unwrap();
    let mut entry: CacheEntry = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
    entry.payload = "42".into();
    fs::write(&path, serde_json::to_vec(&entry).unwrap()).unwrap();
    assert!(matches!(cache.load(KIND, MATERIAL), Lookup::Corrupt(_)));

    let (v, status, _) = cache.get_or_compute::<u32, ()>(KIND, MATERIAL, || Ok(41)).unwrap();
    assert_eq!((v, status), (41, CacheStatus::Computed));
    assert_eq!(cache.load(KIND, MATERIAL), Lookup::Hit("41".into()));
}

#[test]
fn truncated_file_is_corrupt_not_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let path = cache.store(KIND, MATERIAL, "7").unwrap();
    let bytes = fs::read(&path).unwrap();
    fs::write(&path, &bytes[..bytes.len() / 2]).unwrap();
    assert!(matches!(cache.load(KIND, MATERIAL), Lookup::Corrupt(_)));
}

#[test]
fn entry_records_payload_checksum() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let path = cache.store(KIND, MATERIAL, "payload").unwrap();
    let entry: CacheEntry = serde_json::from_slice(&fs::read(path).unwrap()).unwrap();
    assert_eq!(entry.checksum, sha256_hex(b"payload"));
    // known SHA-256 test vector
    assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

#[test]
fn concurrent_writers_converge_to_one_valid_entry() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Arc::new(Cache::new(dir.path()));
    let handles: Vec<_> = (0..8)
        .map(|i| {
            let cache = Arc::clone(&cache);
            thread::spawn(move || {
                for _ in 0..20 {
                    cache.store(KIND, MATERIAL, &format!("writer-{i}")).unwrap();
                }
            })
        })
        .collect();
    for h in handles {
        h.join().unwrap();
    }
    match cache.load(KIND, MATERIAL) {
        Lookup::Hit(p) => assert!(p.starts_with("writer-")),
        other => panic!("expected a valid entry, got {other:?}"),
    }
    let files: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(files.len(), 1, "temp files left behind: {files:?}");
}

#[test]
fn two_processes_writing_the_same_key_converge() {
    let dir = tempfile::tempdir().unwrap();
    let spec = concat!(env!("CARGO_MANIFEST_DIR"), "/../../specs/heisenberg_u1_k2.json");
    let spawn = || {
        Command::new(env!("CARGO_BIN_EXE_zhu-lab"))
            .args(["induce", "--spec", spec, "--max-degree", "3", "--format", "json"])
            .env("ZHU_LAB_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let (a, b) = thread::scope(|s| {
        let a = s.spawn(spawn);
        let b = s.spawn(spawn);
        (a.join().unwrap(), b.join().unwrap())
    });
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let entries: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1);
    assert_eq!(spawn().stdout, a.stdout);
}

use num_complex::Complex64 as C;
use scherk_costa::surface_mesh::export::{load_mesh, read_obj, read_ply, save_mesh, sidecar_path, write_obj, write_ply, gauss_modulus};
use scherk_costa::surface_mesh::{BoundaryTag, SurfaceMesh};

fn triangle() -> SurfaceMesh {
    SurfaceMesh {
        vertices: vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.25]],
        triangles: vec![[0, 1, 2]],
        gauss: vec![[0.0, 0.0, 1.0], [0.6, 0.0, 0.8], [0.0, 0.0, -1.0]],
        boundary_tag: vec![BoundaryTag::Interior; 3],
        param: vec![C::new(0.0, 0.0); 3],
        metric_factor: vec![1.0; 3],
        period: [0.0, 1.0, 0.0],
    }
}

#[test]
fn single_triangle_obj_is_one_based() {
    let mut buf = Vec::new();
    write_obj(&triangle(), &mut buf).unwrap();
    let text = String::from_utf8(buf.clone()).unwrap();
    assert!(text.lines().any(|l| l == "f 1 2 3"));
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 3);
    let back = read_obj(&buf[..]).unwrap();
    assert_eq!(back.vertices, triangle().vertices);
    assert_eq!(back.triangles, vec![[0, 1, 2]]);
}

#[test]
fn empty_mesh_round_trips() {
    let m = SurfaceMesh::default();
    let mut obj = Vec::new();
    write_obj(&m, &mut obj).unwrap();
    assert!(read_obj(&obj[..]).unwrap().is_empty());
    let mut ply = Vec::new();
    write_ply(&m, &mut ply).unwrap();
    let back = read_ply(&ply[..]).unwrap();
    assert!(back.is_empty() && back.triangles.is_empty());
}

#[test]
fn ply_keeps_normals_and_caps_gauss_modulus() {
    let mut buf = Vec::new();
    write_ply(&triangle(), &mut buf).unwrap();
    let back = read_ply(&buf[..]).unwrap();
    assert_eq!(back.vertices, triangle().vertices);
    assert_eq!(back.gauss, triangle().gauss);
    assert_eq!(gauss_modulus([0.0, 0.0, 1.0]), 1e300);
    assert_eq!(gauss_modulus([0.0, 0.0, -1.0]), 0.0);
    assert!((gauss_modulus([0.6, 0.0, 0.8]) - 3.0).abs() < 1e-12);
}

#[test]
fn save_writes_sidecar_and_rejects_unknown_extensions() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["t.obj", "t.ply"] {
        let path = dir.path().join(name);
        let side = save_mesh(&triangle(), &path, &serde_json::json!({ "surface": "test" })).unwrap();
        assert_eq!(side, sidecar_path(&path));
        let meta: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&side).unwrap()).unwrap();
        assert_eq!(meta["surface"], "test");
        assert_eq!(load_mesh(&path).unwrap().triangles.len(), 1);
    }
    let bad = dir.path().join("t.stl");
    assert!(matches!(save_mesh(&triangle(), &bad, &()), Err(scherk_costa::Error::InvalidParameter(_))));
}

#[test]
fn malformed_files_are_errors() {
    assert!(read_obj(&b"v 1 2\n"[..]).is_err());
    assert!(read_obj(&b"f 0 1 2\n"[..]).is_err());
    assert!(read_ply(&b"ply\nelement vertex 2\nend_header\n1 2 3 0 0 1 1\n"[..]).is_err());
}

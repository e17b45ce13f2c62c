// Lattice meshes with per-vertex causal tags, written as OBJ and CSV.

use std::fs;

use ruledmin::catalog::{catalog_tolerances, generate, FamilyId, SignChoice};
use ruledmin::export::Mesh;
use ruledmin::metric::Signature;

fn main() {
    let sig = Signature::new(3, 1).unwrap();
    let ph = generate(sig, FamilyId::ParabolicHelicoid, SignChoice::new(1, 1, -1)).unwrap();
    let mesh = Mesh::build(
        sig,
        &ph.surface,
        &ph.surface.default_grid(31, 31),
        catalog_tolerances().degenerate,
    );
    println!(
        "{} vertices, {} triangles, tags {:?}",
        mesh.vertices.len(),
        mesh.triangles().len(),
        mesh.tag_counts()
    );
    println!("degenerate along t = {:?}", mesh.degenerate_t_values());

    let dir = std::env::temp_dir().join("ruledmin-mesh-example");
    fs::create_dir_all(&dir).unwrap();
    let obj = dir.join("parabolic_helicoid.obj");
    let csv = dir.join("parabolic_helicoid.csv");
    mesh.write_obj(fs::File::create(&obj).unwrap()).unwrap();
    mesh.write_csv(fs::File::create(&csv).unwrap()).unwrap();
    println!("wrote {} and {}", obj.display(), csv.display());
    let header = fs::read_to_string(&csv)
        .unwrap()
        .lines()
        .next()
        .unwrap()
        .to_string();
    println!("csv columns: {header}");
}

mod common;

use common::suite;
use galois_core::constructions::{fixed_field, minimal_splitting_tower};
use galois_core::engine::galois_group_with;
use galois_core::local::select_prime;
use galois_core::perm::PermGroup;

#[test]
fn outputs_do_not_depend_on_the_prime() {
    for (name, f) in suite() {
        let (p1, _) = select_prime(std::slice::from_ref(&f), 3).unwrap();
        let (p2, _) = select_prime(std::slice::from_ref(&f), p1 + 1).unwrap();
        let mut fixed = vec![];
        let mut towers = vec![];
        for p in [p1, p2] {
            let (g, data) = galois_group_with(&f, Some(p)).unwrap();
            let an = g.intersection(&PermGroup::alternating(f.deg()));
            fixed.push(fixed_field(&data, &an).unwrap());
            let (t, _) = minimal_splitting_tower(&data).unwrap();
            towers.push(t.field.render_tower());
        }
        assert_eq!(fixed[0], fixed[1], "{name} with {p1} and {p2}");
        assert_eq!(towers[0], towers[1], "{name} with {p1} and {p2}");
    }
}

use proptest::prelude::*;

use groupoid_core::catalog::{self, Filter};
use groupoid_core::term::{format_term, parse_term};
use groupoid_core::{
    canonical_rename, identities_equal, parastrophe_identity, parse_identity, Action, CayleyTable,
    ClassMode, Grammar, Identity, Permutation, Term, Var,
};

fn var() -> impl Strategy<Value = Term> {
    prop_oneof![Just(Var::X), Just(Var::Y), Just(Var::Z)].prop_map(Term::var)
}

fn term() -> impl Strategy<Value = Term> {
    var().prop_recursive(5, 24, 2, |inner| {
        (inner.clone(), inner).prop_map(|(l, r)| Term::prod(l, r))
    })
}

fn order() -> impl Strategy<Value = usize> {
    1usize..=4
}

fn table(n: usize) -> impl Strategy<Value = CayleyTable> {
    prop::collection::vec(1..=n as u8, n * n).prop_map(move |cells| {
        CayleyTable::from_fn(n, |a, b| cells[(a as usize - 1) * n + b as usize - 1]).unwrap()
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n as u8).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(&images).unwrap())
}

fn table_and_perms() -> impl Strategy<Value = (CayleyTable, Permutation, Permutation)> {
    order().prop_flat_map(|n| (table(n), permutation(n), permutation(n)))
}

fn catalog_identity() -> impl Strategy<Value = Identity> {
    let all: Vec<Identity> = catalog::list(Filter::All)
        .into_iter()
        .map(|e| e.identity.clone())
        .collect();
    prop::sample::select(all)
}

proptest! {
    #[test]
    fn compact_format_parses_back(t in term()) {
        let text = format_term(&t, Grammar::Compact);
        prop_assert_eq!(parse_term(&text, Grammar::Compact).unwrap(), t);
    }

    #[test]
    fn explicit_format_parses_back(t in term()) {
        let text = format_term(&t, Grammar::Explicit);
        prop_assert_eq!(parse_term(&text, Grammar::Explicit).unwrap(), t);
    }

    #[test]
    fn identity_format_parses_back(l in term(), r in term()) {
        let id = Identity::new(l, r);
        for g in [Grammar::Compact, Grammar::Explicit] {
            prop_assert_eq!(&parse_identity(&id.format(g), g).unwrap(), &id);
        }
    }

    #[test]
    fn mirror_is_an_involution(t in term()) {
        prop_assert_eq!(t.mirror().mirror(), t);
    }

    #[test]
    fn renaming_is_idempotent(l in term(), r in term()) {
        let once = canonical_rename(&Identity::new(l, r));
        prop_assert_eq!(canonical_rename(&once), once);
    }

    #[test]
    fn identity_parastrophe_is_an_involution(l in term(), r in term()) {
        let id = Identity::new(l, r);
        let back = parastrophe_identity(&parastrophe_identity(&id));
        prop_assert!(identities_equal(&back, &id));
    }

    #[test]
    fn permutations_act_on_the_right((t, a, b) in table_and_perms()) {
        for action in [Action::Iso, Action::AntiIso] {
            let stepwise = t
                .apply_permutation(&b, action)
                .unwrap()
                .apply_permutation(&a, Action::Iso)
                .unwrap();
            prop_assert_eq!(stepwise, t.apply_permutation(&b.compose(&a), action).unwrap());
        }
    }

    #[test]
    fn two_anti_isomorphisms_make_an_isomorphism((t, a, b) in table_and_perms()) {
        let twice = t
            .apply_permutation(&b, Action::AntiIso)
            .unwrap()
            .apply_permutation(&a, Action::AntiIso)
            .unwrap();
        prop_assert_eq!(twice, t.apply_permutation(&b.compose(&a), Action::Iso).unwrap());
    }

    #[test]
    fn anti_iso_by_identity_is_transpose(t in order().prop_flat_map(table)) {
        let id = Permutation::identity(t.order());
        prop_assert_eq!(t.apply_permutation(&id, Action::AntiIso).unwrap(), t.parastrophe());
    }

    #[test]
    fn satisfaction_transfers_to_parastrophe(
        t in order().prop_flat_map(table),
        f in catalog_identity(),
    ) {
        let star = parastrophe_identity(&f);
        prop_assert_eq!(t.satisfies(&f), t.parastrophe().satisfies(&star));
    }

    #[test]
    fn satisfaction_is_isomorphism_invariant(
        (t, a, _) in table_and_perms(),
        f in catalog_identity(),
    ) {
        let image = t.apply_permutation(&a, Action::Iso).unwrap();
        prop_assert_eq!(t.satisfies(&f), image.satisfies(&f));
        let anti = t.apply_permutation(&a, Action::AntiIso).unwrap();
        prop_assert_eq!(t.satisfies(&f), anti.satisfies(&parastrophe_identity(&f)));
    }

    #[test]
    fn canonical_form_is_orbit_minimum(t in (1usize..=3).prop_flat_map(table)) {
        for mode in [ClassMode::Iso, ClassMode::IsoOrAntiIso] {
            let orbit = t.orbit(mode);
            prop_assert_eq!(&t.canonical_form(mode), orbit.iter().next().unwrap());
        }
    }

    #[test]
    fn commutative_tables_gain_nothing_from_anti(t in order().prop_flat_map(table)) {
        if t.is_commutative() {
            prop_assert_eq!(t.orbit(ClassMode::Iso), t.orbit(ClassMode::IsoOrAntiIso));
        }
    }

    #[test]
    fn encoding_round_trips(t in order().prop_flat_map(table)) {
        prop_assert_eq!(CayleyTable::decode(&t.encode(), t.order()).unwrap(), t);
    }
}

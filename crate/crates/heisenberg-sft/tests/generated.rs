use heisenberg_sft::analyze::{
    check_alignment, check_coordination, check_equal_width, check_row_uniformity, check_sync,
    counter_value, factor_phi, factor_sofic, scan_periods, strip_widths, StripWidth,
};
use heisenberg_sft::generate::{gen_exceptional, gen_omega, gen_omega_tilde, GenParams};
use heisenberg_sft::robinson::in_b;
use heisenberg_sft::sft::{check_window, Letter};
use heisenberg_sft::{Parity, Seg, Site, SiteBox, Symbol, Variant, Window};

fn omega(a: i64, b: i64) -> Window {
    gen_omega(&GenParams::new(SiteBox::symmetric(a, b).unwrap(), Variant::Omega)).unwrap()
}

fn tilde(a: i64, b: i64) -> Window {
    gen_omega_tilde(&GenParams::new(SiteBox::symmetric(a, b).unwrap(), Variant::OmegaTilde)).unwrap()
}

fn assert_clean(w: &Window, what: &str) {
    let v = check_window(w);
    assert!(v.is_empty(), "{what}: {} violations, first {:?}", v.len(), v.first());
}

#[test]
fn desk_scale_windows_are_valid() {
    assert_clean(&omega(5, 33), "omega");
    assert_clean(&tilde(5, 33), "tilde");
}

#[test]
fn shifted_boxes_are_valid() {
    for (x, y, z) in [(-40, 17, -90), (100, -64, 64), (3, 1000, -1000)] {
        let b = SiteBox::new((x - 4, x + 4), (y - 12, y + 12), (z - 12, z + 12)).unwrap();
        for v in [Variant::Omega, Variant::OmegaTilde] {
            for parity in [Parity::Even, Parity::Odd] {
                let w = gen_exceptional(
                    &GenParams::new(b, v).with_parity(parity).with_exceptional_overflow(-1).unwrap(),
                )
                .unwrap();
                assert_clean(&w, &format!("{v:?} {parity:?} at ({x},{y},{z})"));
            }
        }
    }
}

#[test]
fn exceptional_overflow_layers_are_valid() {
    let b = SiteBox::symmetric(6, 14).unwrap();
    for v in [Variant::Omega, Variant::OmegaTilde] {
        for k in [-4, -1, 0, 2, 5] {
            let p = GenParams::new(b, v).with_exceptional_overflow(k).unwrap();
            assert_clean(&gen_exceptional(&p).unwrap(), &format!("{v:?} K={k}"));
        }
        assert_clean(&gen_exceptional(&GenParams::new(b, v)).unwrap(), "constant right half");
    }
}

#[test]
fn exceptional_minus_one_is_the_plain_configuration() {
    let b = SiteBox::symmetric(4, 9).unwrap();
    let p = GenParams::new(b, Variant::Omega);
    let plain = gen_omega(&p).unwrap();
    let exc = gen_exceptional(&p.with_exceptional_overflow(-1).unwrap()).unwrap();
    assert_eq!(plain, exc);
}

#[test]
fn constant_right_half_never_changes() {
    let b = SiteBox::symmetric(6, 8).unwrap();
    let w = gen_exceptional(&GenParams::new(b, Variant::Omega)).unwrap();
    for (h, s) in w.iter().filter(|(h, _)| h.y == 0 && h.z >= 0 && h.x % 2 != 0) {
        assert_eq!(s.as_count().unwrap().digit, 0, "{h}");
    }
}

#[test]
fn exceptional_layer_overflows_every_counter_under_tilde() {
    let b = SiteBox::new((9, 13), (-12, 12), (-12, 12)).unwrap();
    let p = GenParams::new(b, Variant::OmegaTilde).with_exceptional_overflow(5).unwrap();
    let w = gen_exceptional(&p).unwrap();
    for y in (b.y0..=b.y1).filter(|&y| y != 0) {
        for z in b.z0..=b.z1 {
            let c = w.get(Site::new(11, y, z)).unwrap().as_count().unwrap();
            assert_eq!(c.digit, 1);
            if c.bold {
                assert!(matches!(c.seg, Seg::Both | Seg::Coord));
            }
        }
    }
}

#[test]
fn crosses_sit_below_bold_digits() {
    let w = omega(4, 12);
    for (h, s) in w.iter() {
        let Some(t) = s.as_rob() else { continue };
        let up = Site::new(h.x + 1, h.y, h.z + h.y);
        if let Some(c) = w.get(up) {
            assert_eq!(t.is_cross(), c.as_count().unwrap().bold, "{h}");
        }
    }
}

#[test]
fn counters_count_up_one_per_layer() {
    let b = SiteBox::new((-41, 41), (1, 2), (-4, 4)).unwrap();
    let w = gen_omega(&GenParams::new(b, Variant::Omega)).unwrap();
    for (y, i) in [(1i64, 1u32), (2, 2)] {
        let modulus = 1u128 << (1u32 << i);
        let mut prev: Option<u128> = None;
        for x in (b.x0..=b.x1).filter(|x| x.rem_euclid(2) == 1) {
            // The bold column drifts by y per layer; pick the first visible MSB.
            let msb = (b.z0..=b.z1)
                .map(|z| Site::new(x, y, z))
                .find(|&h| in_b(h.y, h.z) && counter_value(&w, h, i).is_some())
                .unwrap();
            let v = counter_value(&w, msb, i).unwrap();
            if let Some(p) = prev {
                assert_eq!(v, (p + 1) % modulus, "y={y} x={x}");
            }
            prev = Some(v);
        }
    }
}

#[test]
fn strip_widths_follow_valuations() {
    let w = omega(3, 17);
    let widths = strip_widths(&w, 1).unwrap();
    assert_eq!(widths[&1], StripWidth::Finite(1));
    assert_eq!(widths[&4], StripWidth::Finite(3));
    assert_eq!(widths[&0], StripWidth::Infinite);
    assert_eq!(widths, strip_widths(&w, 3).unwrap());
    assert!(strip_widths(&w, 0).is_err());
}

#[test]
fn structure_checks_pass_on_generated_windows() {
    for w in [omega(5, 17), tilde(5, 17)] {
        assert!(check_sync(&w).is_empty());
        assert!(check_alignment(&w).is_empty());
        assert!(check_equal_width(&w).is_empty());
    }
    let t = tilde(5, 17);
    assert!(check_coordination(&t).is_empty());
    assert!(check_row_uniformity(&t).is_empty());
}

#[test]
fn omega_is_not_coordinated_but_tilde_is() {
    // Widths 2 and 4 overflow together on layer -1 in both, but the coordination
    // tile only appears in the tilde window.
    let t = tilde(3, 9);
    assert!(t.symbols().iter().any(|s| s.as_count().is_some_and(|c| c.seg == Seg::Coord)));
    let o = omega(3, 9);
    assert!(o.symbols().iter().all(|s| s.as_count().is_none_or(|c| c.seg != Seg::Coord)));
}

#[test]
fn misaligned_supertiles_are_reported() {
    // Paste the upper half of a Robinson layer shifted by 2 along y.
    let w = omega(0, 24);
    let b = w.bbox();
    let moved = Window::from_fn(Variant::Omega, b, |h| {
        if h.z > 0 {
            let src = Site::new(h.x, (h.y + 2 + 24).rem_euclid(49) - 24, h.z);
            w.get(src).unwrap()
        } else {
            w.get(h).unwrap()
        }
    })
    .unwrap();
    assert!(!check_alignment(&moved).is_empty());
}

#[test]
fn single_supertile_has_nothing_to_compare() {
    let b = SiteBox::new((0, 0), (1, 7), (1, 7)).unwrap();
    let w = gen_omega(&GenParams::new(b, Variant::Omega)).unwrap();
    assert!(check_alignment(&w).is_empty());
}

#[test]
fn factor_maps() {
    let t = tilde(5, 17);
    let phi = factor_phi(&t).unwrap();
    assert_eq!(phi.variant(), Variant::Omega);
    assert!(check_window(&phi).is_empty());
    assert_eq!(phi.symbols(), omega(5, 17).symbols());

    let sofic = factor_sofic(&omega(3, 9));
    assert!(check_window(&sofic).is_empty());
    for (h, s) in sofic.iter() {
        if heisenberg_sft::robinson::in_c(h.y, h.z) && h.x % 2 == 0 {
            assert_eq!(s, Symbol::Letter(Letter::C));
        }
    }
}

#[test]
fn scan_refutes_small_periods() {
    assert!(scan_periods(&omega(5, 17), 4).is_empty());
}

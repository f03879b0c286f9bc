//! Deterministic test images.

use crate::image::Image;

/// Smooth ramp from 0 at the top-left to 255 at the bottom-right, rising
/// twice as fast along rows as down columns.
///
/// The uneven slope keeps its level lines off the anti-diagonals, so a
/// diagonal scan does not simply re-sort it.
pub fn gradient(rows: usize, cols: usize) -> Image {
    let span = (rows.saturating_sub(1) + 2 * cols.saturating_sub(1)).max(1);
    Image::from_fn(rows, cols, |r, c| ((r + 2 * c) * 255 / span) as u8).expect("non-empty grid")
}

/// Integer-only synthetic scene: shaded background, two soft discs and mild
/// grain. Stands in for a natural photograph.
pub fn scene(rows: usize, cols: usize) -> Image {
    let mut state: u32 = 0x2545_f491;
    let discs = [
        (
            rows as i64 * 2 / 5,
            cols as i64 * 2 / 5,
            (rows.min(cols) as i64 / 4).max(1),
            90i64,
        ),
        (
            rows as i64 * 3 / 4,
            cols as i64 * 3 / 4,
            (rows.min(cols) as i64 / 6).max(1),
            -70i64,
        ),
    ];
    Image::from_fn(rows, cols, |r, c| {
        state = state.wrapping_mul(1_664_525).wrapping_add(1_013_904_223);
        let grain = i64::from(state >> 28) - 8;
        let mut v = 60 + (r as i64 * 80) / rows as i64 + (c as i64 * 40) / cols as i64;
        for &(cr, cc, radius, gain) in &discs {
            let d2 = (r as i64 - cr).pow(2) + (c as i64 - cc).pow(2);
            let r2 = radius * radius;
            if d2 < r2 {
                v += gain * (r2 - d2) / r2;
            }
        }
        (v + grain).clamp(0, 255) as u8
    })
    .expect("non-empty grid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gradient_corners() {
        let g = gradient(256, 256);
        assert_eq!(g.get(0, 0), 0);
        assert_eq!(g.get(255, 255), 255);
        assert_eq!(g.get(3, 4), 3);
        assert_eq!(g.get(1, 0), 0);
        assert_eq!(g.get(0, 2), 1);
        assert_eq!(gradient(1, 1).pixels(), &[0]);
    }

    #[test]
    fn scene_is_deterministic_and_varied() {
        let a = scene(64, 48);
        assert_eq!(a, scene(64, 48));
        let distinct = crate::metrics::histogram(&a)
            .iter()
            .filter(|&&n| n > 0)
            .count();
        assert!(distinct > 50, "{distinct}");
    }
}

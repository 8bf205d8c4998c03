//! Barycentric straight-line layout. Boundary vertices are pinned to a
//! regular polygon and every other vertex is moved to the mean of its
//! neighbours until the positions settle.

use num_traits::{Float, FloatConst};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Float> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    pub fn lerp(self, other: Self, t: T) -> Self {
        Point::new(self.x + (other.x - self.x) * t, self.y + (other.y - self.y) * t)
    }

    pub fn dist(self, other: Self) -> T {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2)).sqrt()
    }
}

/// Positions for `n` vertices with adjacency `adj` (repeats allowed). The
/// `boundary` vertices go anticlockwise on the unit circle.
pub fn barycentric<T: Float + FloatConst>(n: usize, adj: &[Vec<usize>], boundary: &[usize]) -> Vec<Point<T>> {
    let zero = T::zero();
    let mut pos = vec![Point::new(zero, zero); n];
    let mut pinned = vec![false; n];
    let m = T::from(boundary.len()).expect("small count");
    for (i, &v) in boundary.iter().enumerate() {
        let a = T::TAU() * T::from(i).expect("small count") / m;
        pos[v] = Point::new(a.cos(), a.sin());
        pinned[v] = true;
    }
    let tol = T::from(1e-9).expect("representable");
    for _ in 0..20_000 {
        let mut moved = zero;
        for v in 0..n {
            if pinned[v] || adj[v].is_empty() {
                continue;
            }
            let k = T::from(adj[v].len()).expect("small count");
            let (sx, sy) = adj[v]
                .iter()
                .fold((zero, zero), |(sx, sy), &u| (sx + pos[u].x, sy + pos[u].y));
            let next = Point::new(sx / k, sy / k);
            moved = moved.max(next.dist(pos[v]));
            pos[v] = next;
        }
        if moved < tol {
            break;
        }
    }
    pos
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centre_of_a_square_wheel() {
        let adj = vec![vec![1, 4], vec![0, 2, 4], vec![1, 3, 4], vec![2, 0, 4], vec![0, 1, 2, 3]];
        let adj = {
            let mut a = adj;
            a[0].push(3);
            a
        };
        let pos: Vec<Point<f64>> = barycentric(5, &adj, &[0, 1, 2, 3]);
        assert!(pos[4].x.abs() < 1e-6 && pos[4].y.abs() < 1e-6);
        let single: Vec<Point<f32>> = barycentric(5, &adj, &[0, 1, 2, 3]);
        assert!(single[4].x.abs() < 1e-4);
    }
}

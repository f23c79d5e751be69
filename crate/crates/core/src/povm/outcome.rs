use crate::scalar::Real;

/// A point of the outcome space, optionally labelled.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomePoint<T> {
    pub coordinates: Vec<T>,
    pub label: Option<String>,
}

impl<T: Real> OutcomePoint<T> {
    pub fn new(coordinates: Vec<T>) -> Self {
        Self { coordinates, label: None }
    }

    pub fn labeled(coordinates: Vec<T>, label: impl Into<String>) -> Self {
        Self {
            coordinates,
            label: Some(label.into()),
        }
    }

    pub fn scalar(x: T) -> Self {
        Self::new(vec![x])
    }

    pub fn ambient_dim(&self) -> usize {
        self.coordinates.len()
    }
}

/// One coordinate axis of the outcome space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis<T> {
    pub lower: T,
    pub upper: T,
    /// Periodic axes identify `lower` with `upper`.
    pub periodic: bool,
}

impl<T: Real> Axis<T> {
    pub fn bounded(lower: T, upper: T) -> Self {
        Self { lower, upper, periodic: false }
    }

    pub fn periodic(lower: T, upper: T) -> Self {
        Self { lower, upper, periodic: true }
    }

    pub fn unbounded() -> Self {
        Self {
            lower: T::neg_infinity(),
            upper: T::infinity(),
            periodic: false,
        }
    }

    pub fn period(&self) -> Option<T> {
        self.periodic.then(|| self.upper - self.lower)
    }
}

/// Outcome space descriptor: a product of axes, each a closed interval
/// (possibly unbounded) or a periodic interval.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeSpace<T> {
    pub axes: Vec<Axis<T>>,
}

impl<T: Real> OutcomeSpace<T> {
    pub fn new(axes: Vec<Axis<T>>) -> Self {
        Self { axes }
    }

    /// `R^k` without bounds.
    pub fn unbounded(k: usize) -> Self {
        Self {
            axes: vec![Axis::unbounded(); k],
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.axes.len()
    }

    /// Membership with absolute slack `tol` on bounded axes. Periodic
    /// coordinates are accepted anywhere, they are read modulo the period.
    pub fn contains(&self, p: &OutcomePoint<T>, tol: T) -> bool {
        p.ambient_dim() == self.ambient_dim()
            && p.coordinates.iter().zip(&self.axes).all(|(x, axis)| {
                x.is_finite() && (axis.periodic || (*x >= axis.lower - tol && *x <= axis.upper + tol))
            })
    }

    /// Coordinate-wise comparison within `tol`, modulo the period on
    /// periodic axes.
    pub fn same_point(&self, a: &OutcomePoint<T>, b: &OutcomePoint<T>, tol: T) -> bool {
        if a.ambient_dim() != b.ambient_dim() {
            return false;
        }
        a.coordinates.iter().zip(&b.coordinates).enumerate().all(|(k, (x, y))| {
            let diff = (*x - *y).abs();
            match self.axes.get(k).and_then(Axis::period) {
                Some(period) if period > T::zero() => {
                    let r = diff % period;
                    r.min(period - r) <= tol
                }
                _ => diff <= tol,
            }
        })
    }

    /// Index of the first point in `list` matching `p`.
    pub fn locate(&self, list: &[OutcomePoint<T>], p: &OutcomePoint<T>, tol: T) -> Option<usize> {
        list.iter().position(|q| self.same_point(q, p, tol))
    }
}

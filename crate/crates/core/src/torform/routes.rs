//! Interchangeable ways of computing the same quantity, looked up by name.

use super::{ep_series_ak, hilbert_rational, tor_ak_closed, tor_aprime_closed, TorTable};
use crate::barcomplex::{tor_dims_polyhedral, Variant};
use crate::error::{Error, Result};
use crate::exactmath::{FieldKind, TruncatedSeries};
use crate::galg::GraphProductAlgebra;

/// A way to produce a Tor table of `A'` or `A^K`.
pub trait TorRoute: Send + Sync {
    fn name(&self) -> &'static str;
    fn variant(&self) -> Variant;
    fn compute(&self, gp: &GraphProductAlgebra, s_max: usize, n_max: usize, field: FieldKind) -> Result<TorTable>;
}

/// A way to produce the Hilbert series of `A^K`.
pub trait SeriesRoute: Send + Sync {
    fn name(&self) -> &'static str;
    fn series(&self, gp: &GraphProductAlgebra, n: usize, field: FieldKind) -> Result<TruncatedSeries>;
}

struct ClosedAprime;
struct ClosedAk;
struct Oracle(Variant);

impl TorRoute for ClosedAprime {
    fn name(&self) -> &'static str {
        "closed-aprime"
    }
    fn variant(&self) -> Variant {
        Variant::APrime
    }
    fn compute(&self, gp: &GraphProductAlgebra, s_max: usize, n_max: usize, field: FieldKind) -> Result<TorTable> {
        tor_aprime_closed(gp, s_max, n_max, field)
    }
}

impl TorRoute for ClosedAk {
    fn name(&self) -> &'static str {
        "closed-ak"
    }
    fn variant(&self) -> Variant {
        Variant::AK
    }
    fn compute(&self, gp: &GraphProductAlgebra, s_max: usize, n_max: usize, field: FieldKind) -> Result<TorTable> {
        tor_ak_closed(gp, s_max, n_max, field)
    }
}

impl TorRoute for Oracle {
    fn name(&self) -> &'static str {
        match self.0 {
            Variant::APrime => "oracle-aprime",
            Variant::AK => "oracle-ak",
        }
    }
    fn variant(&self) -> Variant {
        self.0
    }
    fn compute(&self, gp: &GraphProductAlgebra, s_max: usize, n_max: usize, field: FieldKind) -> Result<TorTable> {
        tor_dims_polyhedral(gp, s_max, n_max, field, self.0)
    }
}

struct EpFormula;
struct Census;
struct Rational;

impl SeriesRoute for EpFormula {
    fn name(&self) -> &'static str {
        "ep-formula"
    }
    fn series(&self, gp: &GraphProductAlgebra, n: usize, field: FieldKind) -> Result<TruncatedSeries> {
        ep_series_ak(gp, n, field)
    }
}

impl SeriesRoute for Census {
    fn name(&self) -> &'static str {
        "census"
    }
    fn series(&self, gp: &GraphProductAlgebra, n: usize, _field: FieldKind) -> Result<TruncatedSeries> {
        gp.hilbert_series(n)
    }
}

impl SeriesRoute for Rational {
    fn name(&self) -> &'static str {
        "rational"
    }
    fn series(&self, gp: &GraphProductAlgebra, n: usize, field: FieldKind) -> Result<TruncatedSeries> {
        Ok(hilbert_rational(gp, field)?.expand(n))
    }
}

fn lookup<'r, T: ?Sized>(items: &'r [Box<T>], name: &str, names: impl Fn(&T) -> &'static str, what: &str) -> Result<&'r T> {
    items
        .iter()
        .map(|b| b.as_ref())
        .find(|r| names(r) == name)
        .ok_or_else(|| {
            let known: Vec<_> = items.iter().map(|b| names(b.as_ref())).collect();
            Error::invalid(format!("unknown {what} '{name}' (known: {})", known.join(", ")))
        })
}

pub struct TorRegistry {
    routes: Vec<Box<dyn TorRoute>>,
}

impl TorRegistry {
    pub fn empty() -> Self {
        TorRegistry { routes: Vec::new() }
    }

    pub fn register(&mut self, route: Box<dyn TorRoute>) -> Result<()> {
        if self.routes.iter().any(|r| r.name() == route.name()) {
            return Err(Error::invalid(format!("Tor route '{}' registered twice", route.name())));
        }
        self.routes.push(route);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&dyn TorRoute> {
        lookup(&self.routes, name, |r| r.name(), "Tor route")
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.routes.iter().map(|r| r.name()).collect()
    }

    /// Routes computing the given variant, closed forms first.
    pub fn for_variant(&self, v: Variant) -> Vec<&dyn TorRoute> {
        self.routes.iter().map(|b| b.as_ref()).filter(|r| r.variant() == v).collect()
    }
}

impl Default for TorRegistry {
    fn default() -> Self {
        TorRegistry {
            routes: vec![
                Box::new(ClosedAprime),
                Box::new(ClosedAk),
                Box::new(Oracle(Variant::APrime)),
                Box::new(Oracle(Variant::AK)),
            ],
        }
    }
}

pub struct SeriesRegistry {
    routes: Vec<Box<dyn SeriesRoute>>,
}

impl SeriesRegistry {
    pub fn empty() -> Self {
        SeriesRegistry { routes: Vec::new() }
    }

    pub fn register(&mut self, route: Box<dyn SeriesRoute>) -> Result<()> {
        if self.routes.iter().any(|r| r.name() == route.name()) {
            return Err(Error::invalid(format!("series route '{}' registered twice", route.name())));
        }
        self.routes.push(route);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&dyn SeriesRoute> {
        lookup(&self.routes, name, |r| r.name(), "series route")
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.routes.iter().map(|r| r.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn SeriesRoute> {
        self.routes.iter().map(|b| b.as_ref())
    }
}

impl Default for SeriesRegistry {
    fn default() -> Self {
        SeriesRegistry {
            routes: vec![Box::new(EpFormula), Box::new(Census), Box::new(Rational)],
        }
    }
}

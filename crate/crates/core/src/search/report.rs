use std::fmt;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::time::Duration;

/// How a set of objects was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Filter every candidate through the defining axioms.
    Brute,
    /// Build every object from group data.
    Constructive,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Brute => "brute",
            Mode::Constructive => "constructive",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "brute" => Ok(Mode::Brute),
            "constructive" => Ok(Mode::Constructive),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

/// Order-independent fingerprint of a set of objects: the wrapping sum of
/// per-object hashes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Checksum(pub u64);

impl Checksum {
    pub fn add<T: Hash + ?Sized>(&mut self, object: &T) {
        self.0 = self.0.wrapping_add(object_hash(object));
    }

    pub fn merge(self, other: Checksum) -> Checksum {
        Checksum(self.0.wrapping_add(other.0))
    }
}

impl fmt::Display for Checksum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

pub(crate) fn object_hash<T: Hash + ?Sized>(object: &T) -> u64 {
    let mut h = DefaultHasher::new();
    object.hash(&mut h);
    h.finish()
}

/// Summary of one enumeration run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationReport {
    pub order: usize,
    pub mode: Mode,
    /// Distinct objects emitted.
    pub count: u64,
    /// Candidates produced before deduplication; exceeds `count` only when
    /// the constructive map hits the same object more than once.
    pub generated: u64,
    pub checksum: Checksum,
    pub elapsed: Duration,
}

impl fmt::Display for EnumerationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "order={} mode={} count={} checksum={} elapsed_ms={}",
            self.order,
            self.mode,
            self.count,
            self.checksum,
            self.elapsed.as_millis()
        )
    }
}

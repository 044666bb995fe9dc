use serde::{Deserialize, Serialize};

/// Injective map from logical qubits `0..n` to physical qubits.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Layout {
    physical: Vec<usize>,
}

impl Layout {
    /// Returns `None` unless the map is injective.
    pub fn new(physical: Vec<usize>) -> Option<Layout> {
        let mut seen = physical.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(Layout { physical })
    }

    /// Logical `i` on physical `i`. `num_physical` only bounds the check.
    pub fn identity(num_logical: usize, num_physical: usize) -> Layout {
        assert!(num_logical <= num_physical, "layout does not fit");
        Layout { physical: (0..num_logical).collect() }
    }

    pub fn len(&self) -> usize {
        self.physical.len()
    }

    pub fn is_empty(&self) -> bool {
        self.physical.is_empty()
    }

    pub fn physical(&self, logical: usize) -> usize {
        self.physical[logical]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.physical
    }

    pub fn fits(&self, num_physical: usize) -> bool {
        self.physical.iter().all(|&p| p < num_physical)
    }

    /// Physical-to-logical table of length `num_physical`.
    pub fn inverse(&self, num_physical: usize) -> Vec<Option<usize>> {
        let mut inv = vec![None; num_physical];
        for (l, &p) in self.physical.iter().enumerate() {
            inv[p] = Some(l);
        }
        inv
    }

    /// Parses `"3,0,1"`.
    pub fn parse(text: &str) -> Option<Layout> {
        let text = text.trim();
        if text.is_empty() {
            return Some(Layout { physical: Vec::new() });
        }
        let physical = text
            .split(',')
            .map(|t| t.trim().parse::<usize>().ok())
            .collect::<Option<Vec<_>>>()?;
        Layout::new(physical)
    }
}

impl std::fmt::Display for Layout {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.physical.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_injective() {
        assert!(Layout::new(vec![0, 1, 0]).is_none());
        assert_eq!(Layout::parse("2, 0,1").unwrap().as_slice(), &[2, 0, 1]);
        assert!(Layout::parse("1,x").is_none());
        assert_eq!(Layout::parse("4,1").unwrap().to_string(), "4,1");
    }
}

use crate::error::{Error, Result};

/// Counts function-state copies drawn during one tester run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CopyLedger {
    consumed: u64,
    budget: Option<u64>,
}

impl CopyLedger {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn with_budget(budget: u64) -> Self {
        Self { consumed: 0, budget: Some(budget) }
    }

    pub fn consumed(&self) -> u64 {
        self.consumed
    }

    pub fn budget(&self) -> Option<u64> {
        self.budget
    }

    pub fn remaining(&self) -> Option<u64> {
        self.budget.map(|b| b - self.consumed)
    }

    /// Fails without charging if fewer than `copies` remain.
    pub fn ensure(&self, copies: u64) -> Result<()> {
        match self.budget {
            Some(budget) if self.consumed.checked_add(copies).is_none_or(|c| c > budget) => {
                Err(Error::BudgetExhausted { requested: copies, consumed: self.consumed, budget })
            }
            _ => Ok(()),
        }
    }

    pub fn charge(&mut self, copies: u64) -> Result<()> {
        self.ensure(copies)?;
        self.consumed = self
            .consumed
            .checked_add(copies)
            .ok_or_else(|| Error::Capability("copy count overflows u64".into()))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_is_enforced_without_partial_charge() {
        let mut l = CopyLedger::with_budget(5);
        l.charge(3).unwrap();
        assert!(matches!(l.charge(3), Err(Error::BudgetExhausted { requested: 3, consumed: 3, budget: 5 })));
        assert_eq!(l.consumed(), 3);
        l.charge(2).unwrap();
        assert_eq!(l.remaining(), Some(0));
        assert!(CopyLedger::with_budget(0).charge(1).is_err());
    }

    #[test]
    fn unlimited_counts() {
        let mut l = CopyLedger::unlimited();
        l.charge(u64::MAX / 2).unwrap();
        assert_eq!(l.consumed(), u64::MAX / 2);
    }
}

//! The theorem hypotheses transcribed by hand as plain boolean
//! expressions, one function per case, for comparison with the library's
//! condition strings.

use super::LegendreTable;

pub struct Q<'a> {
    pub p: u64,
    pub q: u64,
    pub r: u64,
    pub s: u64,
    pub l: &'a LegendreTable,
}

impl Q<'_> {
    fn sym(&self, num: &[u64], b: u64) -> i8 {
        self.l.sym(num, b)
    }

    fn t1_base(&self) -> bool {
        let (p, q, r, s) = (self.p, self.q, self.r, self.s);
        p % 4 == 3
            && q % 4 == 3
            && r % 4 == 3
            && (q * r * s) % 4 == 1
            && !(self.sym(&[q], s) == 1 && self.sym(&[r], s) == 1)
            && self.sym(&[2], s) == -1
            && self.sym(&[p], s) == 1
    }

    fn t2_base(&self) -> bool {
        self.p % 4 == 3 && self.q % 4 == 3 && self.r % 4 == 1 && self.s % 4 == 1
    }

    fn t3_base(&self) -> bool {
        [self.p, self.q, self.r, self.s].iter().all(|x| x % 4 == 3)
    }

    fn t4_base(&self) -> bool {
        let (p, q, r, s) = (self.p, self.q, self.r, self.s);
        p % 4 == 3
            && q % 4 == 3
            && r % 4 == 3
            && (q * r * s) % 4 == 1
            && !(self.sym(&[q], s) == 1 && self.sym(&[r], s) == 1)
    }

    fn t3_ii_symbols(&self) -> bool {
        let (p, q, r, s) = (self.p, self.q, self.r, self.s);
        self.sym(&[2], r) == self.sym(&[2], s)
            && self.sym(&[2], s) != self.sym(&[2], q)
            && self.sym(&[q], r) == self.sym(&[r], s)
            && self.sym(&[r], s) == self.sym(&[s], q)
            && self.sym(&[p, r], s) == -1
            && self.sym(&[p, s], r) == -1
    }

    /// `case` is `"1.1 main"`, `"1.5 C4.2"` and so on; `hoisted` adds
    /// `(2/p) != (2/q)` to 1.5 C5.1 and C7.1.
    pub fn holds(&self, case: &str, hoisted: bool) -> bool {
        let (p, q, r, s) = (self.p, self.q, self.r, self.s);
        let two = |x| self.sym(&[2], x);
        let l = |a: u64, b: u64| self.sym(&[a], b);
        let t5 = self.t4_base() && l(q, s) == -1 && l(r, s) == 1;
        let a4 = l(r, p) == -1 && l(p, q) == -1 && l(q, r) == -1;
        let a5 = l(r, p) == -1 && l(p, q) == -1 && l(r, q) == -1;
        let a6 = l(p, r) == -1 && l(q, p) == -1 && l(r, q) == -1;
        let a7 = l(p, r) == -1 && l(q, p) == -1 && l(q, r) == -1;
        let extra = !hoisted || two(p) != two(q);
        match case {
            "1.1 main" => {
                self.t1_base() && self.sym(&[q, r], p) == -1 && self.sym(&[p, r], q) == -1
            }
            "1.1 redundant" => {
                self.t1_base() && l(q, s) == -1 && l(r, s) == -1 && self.sym(&[q, r], p) == -1
            }
            "1.2 C1" => {
                self.t2_base()
                    && two(r) == -1
                    && two(s) == -1
                    && l(q, r) == -1
                    && l(q, s) == -1
                    && self.sym(&[r, s], p) == -1
            }
            "1.2 C2" => {
                self.t2_base()
                    && two(r) == -1
                    && two(s) == -1
                    && self.sym(&[r, s], q) == -1
                    && l(r, p) == -1
                    && l(s, p) == -1
            }
            "1.2 C3" => {
                self.t2_base()
                    && two(r) == 1
                    && two(s) == -1
                    && l(r, s) == -1
                    && l(q, s) == -1
                    && l(r, p) == -1
                    && l(r, q) == 1
            }
            "1.2 C4" => {
                self.t2_base()
                    && two(r) == 1
                    && two(s) == -1
                    && l(r, q) == -1
                    && l(r, s) == -1
                    && l(r, p) == -1
                    && l(s, p) == 1
            }
            "1.2 C5" => {
                self.t2_base()
                    && two(r) == 1
                    && two(s) == -1
                    && l(r, q) == -1
                    && l(r, p) == -1
                    && self.sym(&[p, q], s) == -1
                    && l(r, s) == 1
            }
            "1.3 i" => {
                self.t3_base()
                    && two(r) != two(s)
                    && l(q, r) == 1
                    && l(q, s) == 1
                    && l(p, q) == 1
                    && l(p, r) == -1
                    && l(p, s) == -1
            }
            "1.3 ii" | "1.7 main" => self.t3_base() && self.t3_ii_symbols(),
            "1.4 C1" => {
                self.t4_base()
                    && l(q, s) == -1
                    && l(r, s) == -1
                    && self.sym(&[2, p], s) == -1
                    && self.sym(&[q, r], p) == -1
                    && self.sym(&[2, p], q) == 1
                    && q % 8 != r % 8
            }
            "1.4 C2" => {
                self.t4_base()
                    && l(q, s) == -1
                    && l(r, s) == -1
                    && l(s, p) == 1
                    && self.sym(&[q, r], p) == -1
                    && p % 8 == q % 8
                    && q % 8 == r % 8
                    && s % 8 == 5
            }
            "1.4 C3" => {
                self.t4_base()
                    && l(q, s) == -1
                    && l(r, s) == -1
                    && l(s, p) == -1
                    && self.sym(&[q, r], p) == -1
                    && p % 8 != q % 8
                    && q % 8 == r % 8
                    && s % 8 == 1
            }
            "1.5 C4.1" => t5 && a4 && two(p) == -1 && two(r) == -1 && two(s) == -1 && l(s, p) == 1,
            "1.5 C4.2" => {
                t5 && a4 && two(p) == 1 && two(q) == 1 && two(r) == -1 && two(s) == 1 && l(s, p) == -1
            }
            "1.5 C5.1" => t5 && a5 && two(p) == 1 && two(r) == -1 && two(s) == -1 && l(s, p) == 1 && extra,
            "1.5 C5.2" => t5 && a5 && two(p) != two(q) && two(r) == -1 && two(s) == 1 && l(s, p) == -1,
            "1.5 C6.1" => t5 && a6 && two(p) == 1 && two(r) == 1 && two(s) == -1 && l(s, p) == 1,
            "1.5 C6.2" => {
                t5 && a6 && two(p) == -1 && two(q) == -1 && two(r) == 1 && two(s) == 1 && l(s, p) == -1
            }
            "1.5 C7.1" => t5 && a7 && two(p) == -1 && two(r) == 1 && two(s) == -1 && l(s, p) == 1 && extra,
            "1.5 C7.2" => t5 && a7 && two(p) != two(q) && two(r) == 1 && two(s) == 1 && l(s, p) == -1,
            "1.6 main" => {
                self.t2_base()
                    && two(s) == -1
                    && l(q, r) == -1
                    && l(s, r) == -1
                    && l(p, r) == -1
                    && l(q, s) == 1
                    && l(p, s) == 1
            }
            other => panic!("no hand transcription for {other}"),
        }
    }
}

use verlinde_core::depth::*;
use verlinde_core::*;
fn main() {
    for (t, kmax) in [("B3", 4), ("B4", 3), ("D4", 3), ("D5", 2), ("G2", 6), ("F4", 2), ("E6", 2)] {
        let rt = RepTheory::for_type(t.parse().unwrap());
        let rs = rt.root_system().clone();
        let seq = support_sequence(&rt, kmax, Mode::Classical).unwrap();
        for s in seq.iter().skip(1) {
            let best = s.weights.iter().max_by_key(|w| epsilon(w)).unwrap();
            println!("{t} k={} |S|={} max eps={} at {} lp={}", s.k, s.weights.len(), epsilon(best), best, lp_epsilon_max(&rs, s.k).unwrap());
        }
    }
}

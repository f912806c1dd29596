//! Equivalence checking and shortest distinguishing words.

use partial_dfa::{distinguishing_word, equivalent, minimize, parse_dfa, unary_cycle, Alphabet};

fn main() -> partial_dfa::Result<()> {
    let six = parse_dfa(
        "alphabet b\nstates 6\nstart 0\naccept 0 2 4\n\
         0 b 1\n1 b 2\n2 b 3\n3 b 4\n4 b 5\n5 b 0\n",
    )?;
    let b = Alphabet::from_chars("b")?;
    let two = unary_cycle(2, 'b', b.clone())?;
    let three = unary_cycle(3, 'b', b)?;
    println!("six-cycle with even accepting ≡ (bb)*: {}", equivalent(&six, &two)?);
    println!("minimal form has {} states", minimize(&six).state_count());
    let word: Option<String> = distinguishing_word(&two, &three)?.map(|w| w.into_iter().collect());
    println!("(bb)* vs (bbb)*: equivalent = {}, shortest witness {word:?}", equivalent(&two, &three)?);
    Ok(())
}

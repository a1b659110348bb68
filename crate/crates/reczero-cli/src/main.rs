fn main() {
    println!("reczero");
}
